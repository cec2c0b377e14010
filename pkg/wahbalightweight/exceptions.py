from typing import Optional


class WahbaError(Exception):
    """
    Base class for wahbalightweight Errors.
    """

    pass


class DegenerateQuaternionError(WahbaError):
    """
    Exception raised if a quaternion has (near) zero norm.
    """

    def __init__(self, norm: float):
        super(DegenerateQuaternionError, self).__init__(norm)
        self.norm = norm

    def __str__(self):
        return "Degenerate quaternion, norm: %s" % self.norm


class ComponentIndexError(WahbaError):
    """
    Exception raised if a quaternion component
    index is outside 0..3.
    """

    def __init__(self, index: int):
        super(ComponentIndexError, self).__init__(index)
        self.index = index

    def __str__(self):
        return "Quaternion component index out of range: %s" % self.index


class ObservationError(WahbaError):
    """
    Exception raised if an observation pair
    or set is invalid.
    """

    def __init__(self, message: str):
        super(ObservationError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class NonSymmetricError(WahbaError):
    """
    Exception raised if eigensolver input
    is not symmetric.
    """

    def __init__(self, asymmetry: float):
        super(NonSymmetricError, self).__init__(asymmetry)
        self.asymmetry = asymmetry

    def __str__(self):
        return "Matrix is not symmetric, max |M - M.T|: %s" % self.asymmetry


class FactorisationError(WahbaError):
    """
    Exception raised if the damped normal
    equations cannot be factorised.
    """

    def __init__(self, message: str):
        super(FactorisationError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class ConfigError(WahbaError):
    """
    Exception raised if optimizer, simulator
    or command line settings are invalid.
    """

    def __init__(self, message: str):
        super(ConfigError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class InputFileError(WahbaError):
    """
    Exception raised if an observation file
    cannot be read or parsed.
    """

    def __init__(self, path: str, message: str, lineno: Optional[int] = None):
        super(InputFileError, self).__init__(path, message, lineno)
        self.path = path
        self.message = message
        self.lineno = lineno

    def __str__(self):
        if self.lineno is not None:
            return "%s:%s: %s" % (self.path, self.lineno, self.message)
        return "%s: %s" % (self.path, self.message)
