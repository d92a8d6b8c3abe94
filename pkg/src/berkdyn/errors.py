"""Exception hierarchy.

Two families matter to callers: ``UserInputError`` covers violated
preconditions and malformed data (CLI exit code 2), ``DegeneracyError``
covers mathematically degenerate inputs and resource budgets (CLI exit
code 3).  Every exception carries a stable machine-readable ``code``.
"""

from __future__ import annotations


class BerkdynError(Exception):
    code = "error"


class UserInputError(BerkdynError):
    code = "input"


class DegeneracyError(BerkdynError):
    code = "degenerate"


class SchemaError(UserInputError):
    code = "schema"


class CtxMismatch(UserInputError):
    code = "ctx_mismatch"


class DivisionByZero(UserInputError, ZeroDivisionError):
    code = "division_by_zero"


class VarMismatch(UserInputError):
    code = "var_mismatch"


class InfinityNotAllowed(UserInputError):
    code = "infinity_not_allowed"


class TypeOnePoint(UserInputError):
    code = "type_one_point"


class KernelPole(UserInputError):
    code = "kernel_pole"


class ZeroPolynomial(DegeneracyError):
    code = "zero_polynomial"


class DegreeBudgetExceeded(DegeneracyError):
    code = "degree_budget_exceeded"


class EmptyRegion(DegeneracyError):
    code = "empty_region"


class ZeroCapacity(DegeneracyError):
    code = "zero_capacity"


class AtomOffSkeleton(UserInputError):
    code = "atom_off_skeleton"


class TypeOneBasePoint(UserInputError):
    code = "type_one_base_point"


class ConstantMarkedOrbit(DegeneracyError):
    code = "constant_marked_orbit"


class TypeOneTarget(UserInputError):
    code = "type_one_target"


class ConstantPolynomial(DegeneracyError):
    code = "constant_polynomial"


class NotTypeOne(UserInputError):
    code = "not_type_one"


class NonConstantLeadingCoeff(UserInputError):
    code = "non_constant_leading_coeff"


class ResultantVanishes(DegeneracyError):
    code = "resultant_vanishes"
