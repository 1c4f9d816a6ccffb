from rest_framework import status
from rest_framework.exceptions import APIException


VERIFICATION_FAILED = 1
USAGE_ERROR = 2


class EmbeddingError(APIException):
    """
    Base class for every domain error. `exit_code` is what the management
    commands return when the error escapes to the command line.
    """
    status_code = status.HTTP_400_BAD_REQUEST
    default_detail = "Embedding error."
    default_code = "embedding_error"
    exit_code = USAGE_ERROR


class InvalidSpec(EmbeddingError):
    default_detail = "Invalid hypergraph parameters."
    default_code = "invalid_spec"


class OddOrder(EmbeddingError):
    default_detail = "Only even orders admit quadrilateral embeddings."
    default_code = "odd_order"


class UnsupportedCase(EmbeddingError):
    default_detail = "No construction exists for these parameters."
    default_code = "unsupported_case"


class VertexAbsent(EmbeddingError):
    default_detail = "Vertex does not occur in the circuit."
    default_code = "vertex_absent"


class MismatchedAmbient(EmbeddingError):
    default_detail = "Circuits live in different ambient graphs."
    default_code = "mismatched_ambient"


class NotAnEmbeddingSet(EmbeddingError):
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_detail = "Circuits do not form an embedding set."
    default_code = "not_an_embedding_set"
    exit_code = VERIFICATION_FAILED


class NotQuadrilateral(EmbeddingError):
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_detail = "Embedding has a face of length other than 4."
    default_code = "not_quadrilateral"
    exit_code = VERIFICATION_FAILED


class Disconnected(EmbeddingError):
    default_detail = "Graph is not connected."
    default_code = "disconnected"


class GraphMismatch(EmbeddingError):
    default_detail = "Schemes are defined on different graphs."
    default_code = "graph_mismatch"


class NoCommonTransition(EmbeddingError):
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    default_detail = "No transition is shared by the circuits being spliced."
    default_code = "no_common_transition"
    exit_code = VERIFICATION_FAILED


class BoundExceeded(EmbeddingError):
    default_detail = "Order exceeds the configured search bound."
    default_code = "bound_exceeded"


class BudgetExhausted(EmbeddingError):
    status_code = status.HTTP_206_PARTIAL_CONTENT
    default_detail = "Sampling budget exhausted before reaching the requested count."
    default_code = "budget_exhausted"
    exit_code = VERIFICATION_FAILED

    def __init__(self, detail=None, code=None, found=None):
        super().__init__(detail, code)
        self.found = found or []


class FormatError(EmbeddingError):
    default_detail = "Malformed input."
    default_code = "format_error"

    def __init__(self, detail=None, code=None, line=None):
        if line is not None and detail is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail, code)
        self.line = line


class UnknownFormatVersion(FormatError):
    default_detail = "Unknown file format version."
    default_code = "unknown_format_version"
