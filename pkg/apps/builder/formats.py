import re

from apps.circuits.circuits import EmbeddingSet, format_circuit_line, parse_circuit_line
from utils.exceptions import FormatError, UnknownFormatVersion

HEADER = "# kn3-embedding-set v1"
HEADER_PREFIX = "# kn3-embedding-set"

METADATA = re.compile(r"^n=(\d+) m=(\d+) orientable=([01])$")


def format_embedding_set(embedding_set):
    lines = [
        HEADER,
        f"n={embedding_set.n} m={embedding_set.m} orientable={int(embedding_set.strong)}",
    ]
    lines.extend(format_circuit_line(circuit) for circuit in embedding_set.circuits)
    return "\n".join(lines) + "\n"


def check_header(line, expected, prefix, lineno=1):
    if line == expected:
        return
    if line.startswith(prefix):
        raise UnknownFormatVersion(f"unsupported header '{line}', expected '{expected}'", line=lineno)
    raise FormatError(f"missing header '{expected}'", line=lineno)


def parse_embedding_set(text, first_lineno=1):
    """
    Parses one embedding set. `first_lineno` offsets reported line numbers when
    the text is a record cut out of a larger file.
    """
    numbered = [
        (lineno, line.strip())
        for lineno, line in enumerate(text.splitlines(), start=first_lineno)
        if line.strip()
    ]
    if not numbered:
        raise FormatError("empty input", line=first_lineno)

    lineno, header = numbered[0]
    check_header(header, HEADER, HEADER_PREFIX, lineno)

    if len(numbered) < 2:
        raise FormatError("missing metadata line 'n=<n> m=<m> orientable=<0|1>'", line=lineno + 1)
    lineno, metadata = numbered[1]
    match = METADATA.match(metadata)
    if not match:
        raise FormatError("expected 'n=<n> m=<m> orientable=<0|1>'", line=lineno)
    n, m, orientable = int(match.group(1)), int(match.group(2)), match.group(3) == "1"

    circuits = {}
    for lineno, line in numbered[2:]:
        circuit = parse_circuit_line(line, n=n, m=m, lineno=lineno)
        if circuit.excluded in circuits:
            raise FormatError(f"duplicate circuit T {circuit.excluded}", line=lineno)
        if not 1 <= circuit.excluded <= n:
            raise FormatError(f"circuit index {circuit.excluded} outside 1..{n}", line=lineno)
        circuits[circuit.excluded] = circuit

    missing = [i for i in range(1, n + 1) if i not in circuits]
    if missing:
        raise FormatError(f"missing circuits for {missing}", line=numbered[-1][0])

    return EmbeddingSet(n=n, m=m, circuits=[circuits[i] for i in range(1, n + 1)], strong=orientable)
