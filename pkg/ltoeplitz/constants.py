class Tolerance:
    CLEANUP = 1e-15
    COMPARE = 1e-12
    CURVE = 1e-8
    ON_CURVE = 1e-9
    ESSENTIAL = 1e-9
    SUP_NORM = 1e-9
    ROTATION_ORDER = 1e-9
    UNIT_MODULUS = 1e-10
    ELLIPTIC = 1e-10
    PHASE_SNAP = 1e-9
    PULLBACK_TAIL = 1e-8


class Sampling:
    MIN_POINTS = 4096
    POINTS_PER_DEGREE = 64
    MAX_POINTS = 2**20
    WINDING_START = 256
    WINDING_MAX = 2**20
    CURVE_MIN = 16
    REFINE_CANDIDATES = 8
    PULLBACK_MIN = 1024
    PULLBACK_PER_DEGREE = 8
    # below this product degree the trichotomy guard counts roots directly
    ROOT_GUARD_DEGREE = 32
    ROOT_GUARD_DISTANCE = 1e-6
    # region screening: nodes per vectorized block, w-plane band left to exact classify
    SCREEN_CHUNK = 64
    SCREEN_BAND = 1e-2
    # extremum certification: cells resampled locally, and points per resampled cell
    LOCAL_CELLS = 64
    LOCAL_POINTS = 1024
    # past this multiple of the coefficient l1 norm the distance to w is |w| to within an ulp
    FAR_FIELD = 2.0**53


class Limits:
    MAX_DIMENSION = 8192
    MAX_RESOLUTION = 4096
    MAX_ORDER = 64
    MAX_DEGREE = 4096
    PULLBACK_START = 64
    PULLBACK_MAX = 4096


class Kinds:
    RESOLVENT = "Resolvent"
    ESSENTIAL = "EssentialSpectrum"
    HOLE = "FredholmHole"
    NEAR = "NearBoundary"

    ALL = (RESOLVENT, ESSENTIAL, HOLE, NEAR)


class Colors:
    RESOLVENT = (255, 255, 255)
    ESSENTIAL = (20, 20, 20)
    HOLE = (52, 101, 164)
    NEAR = (239, 41, 41)


kind_colors = {
    Kinds.RESOLVENT: Colors.RESOLVENT,
    Kinds.ESSENTIAL: Colors.ESSENTIAL,
    Kinds.HOLE: Colors.HOLE,
    Kinds.NEAR: Colors.NEAR,
}

kind_codes = {kind: code for code, kind in enumerate(Kinds.ALL)}


class ExitCode:
    OK = 0
    VALIDATION = 2
    COMPUTATION = 3
