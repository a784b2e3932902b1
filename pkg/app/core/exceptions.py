"""
Domain exceptions raised by the mapping services

Routers translate these into HTTP errors and the CLI into exit codes.
"""


class BonsaiError(Exception):
    """Base class for all mapping toolkit errors"""


class DimensionError(BonsaiError):
    """Operands act on different numbers of qubits"""


class InvalidTreeError(BonsaiError):
    """A tree fails structural validation"""
    
    def __init__(self, message: str, offending=None):
        super().__init__(message)
        self.offending = sorted(offending or [])


class ForeignLegError(BonsaiError):
    """A leg does not belong to the tree it is used with"""


class BijectionError(BonsaiError):
    """A mode-to-qubit assignment is not a bijection"""


class ModeRangeError(BonsaiError):
    """A mode index is outside the mapping"""


class MissingSourceTreeError(BonsaiError):
    """The operation needs the tree a mapping was built from"""


class OracleSizeError(BonsaiError):
    """The dense oracle was asked to build matrices that are too large"""


class DisconnectedGraphError(BonsaiError):
    """A hardware graph is not connected"""


class InvalidParameterError(BonsaiError):
    """A generator or command received an invalid parameter"""


class EmptySupportError(BonsaiError):
    """A Steiner query was given no terminals"""


class RepeatedModeError(BonsaiError):
    """An excitation names the same mode twice"""


class SerializationError(BonsaiError):
    """Input text could not be parsed into a domain object"""
