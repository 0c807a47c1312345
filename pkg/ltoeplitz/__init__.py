__version__ = "0.1.0"

from ltoeplitz.structs.symbol import *
from ltoeplitz.structs.curve import *
from ltoeplitz.structs.moebius import *
from ltoeplitz.errors import *
from ltoeplitz.constants import *
from ltoeplitz import symbolkit, matrixlab, spectra, wco, render
