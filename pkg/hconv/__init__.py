__version__ = '0.1.0'

from .errors import HconvError  # noqa
from .errors import InvalidParameter  # noqa
from .errors import NearZeroConstantTerm  # noqa
from .errors import DenominatorVanishes  # noqa
from .errors import InconclusiveBoundary  # noqa
from .errors import NoConvergence  # noqa
from .errors import DegenerateCurve  # noqa
from .errors import MapSpecError  # noqa
from .series import PowerSeries  # noqa
from .mappings import HarmonicMap  # noqa
from .mappings import MobiusShifted  # noqa
from .mappings import Monomial  # noqa
from .mappings import ReflectedMobius  # noqa
from .mappings import SeriesGiven  # noqa
from .mappings import identity  # noqa
from .mappings import f0  # noqa
from .mappings import f_a_gamma  # noqa
from .mappings import shear_slanted  # noqa
from .mappings import strip_map  # noqa
from .mappings import validate_normalization  # noqa
from .convolution import MobiusDilatation  # noqa
from .convolution import harmonic_convolve  # noqa
from .convolution import dilatation_f0_star  # noqa
from .convolution import dilatation_mobius_case  # noqa
from .convolution import dilatation_fa_star  # noqa
from .convolution import S_halfplane  # noqa
from .convolution import S_strip  # noqa
from .convolution import u_strip  # noqa
from .rootcheck import ComplexPolynomial  # noqa
from .rootcheck import Blaschke  # noqa
from .rootcheck import classify_blaschke  # noqa
from .rootcheck import cohn_reduce  # noqa
from .rootcheck import roots_in_disk_count  # noqa
from .geometry import CheckReport  # noqa
from .geometry import BoundaryCurve  # noqa
from .geometry import boundary_curve  # noqa
from .geometry import convex_in_direction_check  # noqa
from .geometry import jacobian_positive  # noqa
from .mapspec import parse_map  # noqa
