"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError`; the CLI
maps it to exit status 2. :class:`BoundExceeded` maps to exit status 3.
"""

import os


class TorsorLabError(Exception):
    pass


class ValidationError(TorsorLabError, ValueError):
    pass


class BoundExceeded(TorsorLabError):
    pass


# group_core
class NonAssociative(ValidationError): pass
class NotClosed(ValidationError): pass
class NoIdentity(ValidationError): pass
class NoInverse(ValidationError): pass
class NotASubgroup(ValidationError): pass
class NotNormal(ValidationError): pass
class NotIntoAut(ValidationError): pass
class NotAHomomorphism(ValidationError): pass

# gamma_scheme
class ActNotHom(ValidationError): pass
class ChiNotHom(ValidationError): pass
class ChiNotUnit(ValidationError): pass
class NotEquivariant(ValidationError): pass
class NotInjective(ValidationError): pass
class TrivialKernelViolated(ValidationError): pass
class PhiNotEquivariant(ValidationError): pass
class GammaMismatch(ValidationError): pass
class NotStable(ValidationError): pass

# cohomology
class NotACocycle(ValidationError): pass
class SigmaNotFromK(ValidationError): pass
class PlaceNotInGamma(ValidationError): pass
class InvalidPlace(ValidationError): pass
class InsufficientPlaces(ValidationError): pass

# heights
class NotFaithful(ValidationError): pass
class NotGammaInvariant(ValidationError): pass
class TrivialGroup(ValidationError): pass
class MissingOverride(ValidationError): pass
class RamifiedOutsideList(ValidationError): pass

# structure
class NotSemicommutative(ValidationError): pass
class NotTame(ValidationError): pass

# arithmetic_count
class UnsupportedModulus(ValidationError): pass
class InsufficientSamples(ValidationError): pass


DEFAULT_BOUND = 128


def enumeration_bound(default=DEFAULT_BOUND):
    """Group-order bound, overridable with ``TORSOR_LAB_BOUND``."""
    raw = os.environ.get("TORSOR_LAB_BOUND")
    if raw is None:
        return default
    try:
        value = int(float(raw))
    except ValueError:
        raise ValidationError(f"TORSOR_LAB_BOUND={raw!r} is not a number")
    if value <= 0:
        raise ValidationError("TORSOR_LAB_BOUND must be positive")
    return value


def check_bound(n, what="group", bound=None):
    limit = enumeration_bound() if bound is None else bound
    if n > limit:
        raise BoundExceeded(f"{what} of size {n} exceeds bound {limit}")
