from apps.circuits.circuits import is_embedding_set
from apps.levi.hypergraph import HypergraphSpec, euler_genus_lower_bound
from apps.scheme.embedding import set_to_scheme
from apps.scheme.faces import trace_faces


def yes_no(flag):
    return "yes" if flag else "no"


def pass_fail(flag):
    if flag is None:
        return "skipped"
    return "pass" if flag else "FAIL"


def face_rows(faces):
    histogram = " ".join(f"{length}x{count}" for length, count in faces.histogram.items())
    return [
        ("faces", faces.face_count),
        ("face lengths", histogram),
        ("euler genus", faces.euler_genus),
        ("orientable", yes_no(faces.orientable)),
        ("genus" if faces.orientable else "crosscap", faces.genus),
    ]


def verification_report(embedding_set, strict_strong=False):
    """
    Runs the circuit checks, then the face trace when the circuits form an
    embedding set. `ok` is False on any failed check; strength only counts
    under `strict_strong`.
    """
    report = is_embedding_set(embedding_set)
    bound = euler_genus_lower_bound(HypergraphSpec(n=embedding_set.n, m=embedding_set.m))
    result = {
        "n": embedding_set.n,
        "m": embedding_set.m,
        "eulerian": report.eulerian,
        "compatible": report.compatible,
        "strong": report.strong,
        "mixed_pairs": [list(pair) for pair in report.mixed_pairs],
        "quadrilateral": None,
        "euler_genus": None,
        "euler_genus_lower_bound": bound,
        "genus": None,
        "ok": report.ok,
        "message": report.message,
    }
    if not report.ok:
        return result

    faces = trace_faces(set_to_scheme(embedding_set))
    result.update(quadrilateral=faces.quadrilateral, euler_genus=faces.euler_genus, genus=faces.genus)
    if not faces.quadrilateral:
        result.update(ok=False, message=f"face lengths {faces.histogram}")
    elif faces.euler_genus != bound:
        result.update(ok=False, message=f"Euler genus {faces.euler_genus} is above the lower bound {bound}")
    elif strict_strong and not report.strong:
        result.update(ok=False, message=report.message)
    return result


def verification_rows(result):
    strong = yes_no(result["strong"])
    if result["mixed_pairs"]:
        strong += " (mixed pairs " + ", ".join(f"({a},{b})" for a, b in result["mixed_pairs"]) + ")"
    genus = result["genus"]
    genus_label = "crosscap" if genus is not None and not result["strong"] else "genus"
    return [
        ("eulerian", pass_fail(result["eulerian"])),
        ("compatible", pass_fail(result["compatible"] if result["eulerian"] else None)),
        ("strong", strong if result["compatible"] else "skipped"),
        ("quadrilateral", pass_fail(result["quadrilateral"])),
        ("euler genus", "skipped" if result["euler_genus"] is None
            else f"{result['euler_genus']} (lower bound {result['euler_genus_lower_bound']})"),
        (genus_label, "skipped" if genus is None else genus),
    ]
