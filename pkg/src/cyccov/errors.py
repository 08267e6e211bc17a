"""Exception taxonomy.

Exit-code mapping used by the CLI:
  ValidationError and subclasses -> 1 (bad input)
  BudgetExceeded, DomainTooLarge -> 2 (work estimate above budget)
  InvariantViolation, NotValidated -> 3 (internal cross-check failed; a bug
  or a genuine finding, never silently swallowed)
"""


class CycCovError(Exception):
    """Base class for all library errors."""


class ValidationError(CycCovError):
    """Invalid input data."""


class ZeroResidue(ValidationError):
    """Canonical residue requested for a value divisible by the modulus."""


class NotAUnit(ValidationError):
    """Residue is not invertible modulo m."""


class BadEntry(ValidationError):
    """Cover exponent outside the open interval (0, m), or too few entries."""


class BadSum(ValidationError):
    """Cover exponents do not sum to 0 modulo m."""


class Disconnected(ValidationError):
    """gcd(m, a_1, ..., a_r) > 1: the cover is reducible."""


class BadExponent(ValidationError):
    """Family parameter f is not an odd prime."""


class BadOrder(ValidationError):
    """Multiplicative order does not divide (m-1)/2, or m is even."""


class BadClass(ValidationError):
    """Residue class does not meet the requested order/shape constraints."""


class BadSubset(ValidationError):
    """Index subset outside the admissible range for a split."""


class BadInstance(ValidationError):
    """Curve instance violates a field or branch-locus precondition."""


class UnsupportedRamification(ValidationError):
    """Some gcd(a_i, m) > 1: the oracle's counting rules do not apply."""


class BudgetExceeded(CycCovError):
    """Requested computation exceeds the configured work budget."""


class DomainTooLarge(BudgetExceeded):
    """Search domain's estimated work exceeds the configured budget."""


class InvariantViolation(CycCovError):
    """An internal cross-check failed; always a bug or a reportable finding."""


class NotValidated(CycCovError):
    """Cartier path requested but its cross-validation gate has not passed."""
