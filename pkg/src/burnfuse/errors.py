"""Exception types shared across the package."""


class BurnfuseError(Exception):
    """Base class for all errors raised by this package."""


class GroupParseError(BurnfuseError):
    """A group spec string does not conform to the grammar."""


class CapExceededError(BurnfuseError):
    """A group order or enumeration size exceeded the configured cap."""


class SubgroupError(BurnfuseError):
    """An argument is not a subgroup of the expected parent group."""


class HomomorphismError(BurnfuseError):
    """A claimed map between groups is not multiplicative."""


class ScalarMismatchError(BurnfuseError):
    """Incompatible scalar kinds, primes, or precisions."""


class BisetError(BurnfuseError):
    """Invalid biset data: mismatched groups, non-free right action,
    non-commuting actions, or a non-bifree class where one is required."""


class NonUnitError(BurnfuseError):
    """Inversion was requested for a non-unit."""


class NotSemicharacteristicError(BurnfuseError):
    """A stable element is supported outside the semicharacteristic classes."""


class ConvergenceError(BurnfuseError):
    """A fixed-point iteration failed to stabilize within the guard."""


class FormulaMismatchError(BurnfuseError):
    """Two routes that must agree produced different values."""


class FusionError(BurnfuseError):
    """Fusion-system mismatch: wrong Sylow subgroup, wrong prime, a map
    that is not fusion preserving, or a non-stable element."""


class InputError(BurnfuseError):
    """Malformed command-line input or element JSON."""
