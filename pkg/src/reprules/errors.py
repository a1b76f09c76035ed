"""Exception hierarchy shared by every module."""


class ReprulesError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ReprulesError):
    """The input source could not be read or parsed."""


class EmptyDatasetError(InputError):
    """Parsing succeeded but produced no transactions."""


class ParameterError(ReprulesError, ValueError):
    """A caller-supplied parameter is out of range or inconsistent."""


class DomainError(ReprulesError, KeyError):
    """An item or rule is not part of the dataset/table it was looked up in."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""
