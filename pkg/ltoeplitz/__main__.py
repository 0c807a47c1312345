import sys

from ltoeplitz.cli import main

sys.exit(main())
