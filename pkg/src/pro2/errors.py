"""Exception types shared across the package."""


class ContextMismatchError(ValueError):
    """Elements or subgroups from different levels were combined."""


class CapacityError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


class NotNormalError(ValueError):
    """An operation requiring a normal subgroup received a non-normal one."""


class UndefinedRatioError(ZeroDivisionError):
    """A dimension ratio was requested at a level where the index is trivial."""
