from math import prod

from sympy import factorial, factorial2

from utils.exceptions import InvalidSpec, OddOrder


def _check_order(n):
    if n % 2:
        raise OddOrder(f"n must be even, got {n}.")
    if n < 4:
        raise InvalidSpec(f"n must be at least 4, got {n}.")


def count_lower_bound(n):
    """
    Lower bound on the number of inequivalent minimum-genus embeddings from
    the growth of the construction: R_4 = 1 and
    R_n = 1/2 ((n-4)/2)^((n-2)/2) (n-3)!! 2^((n-2)/2) R_{n-2}.
    """
    _check_order(n)
    bound = 1
    for k in range(6, n + 1, 2):
        bound *= ((k - 4) // 2) ** ((k - 2) // 2) * int(factorial2(k - 3)) * 2 ** ((k - 4) // 2)
    return bound


def count_lower_bound_product(n):
    """The same bound unrolled: prod over k = 2 .. (n-2)/2 of (k-1)^k (2k-1)!! 2^(k-1)."""
    _check_order(n)
    return prod(
        (k - 1) ** k * int(factorial2(2 * k - 1)) * 2 ** (k - 1)
        for k in range(2, (n - 2) // 2 + 1)
    )


def count_upper_bound(n):
    """((n-3)!!)^(n(n-1)/2): at most (n-3)!! ways to match the transitions of each pair of circuits."""
    _check_order(n)
    return int(factorial2(n - 3)) ** (n * (n - 1) // 2)


def isomorphism_lower_bound(n):
    """Relabelling merges at most n! labelled classes into one isomorphism class."""
    bound = count_lower_bound(n)
    order = int(factorial(n))
    return -(-bound // order)
