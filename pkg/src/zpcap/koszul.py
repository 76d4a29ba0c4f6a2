"""The one place where Koszul signs are decided.

Conventions, all mod 2:

* an algebra entry sitting in a bar slot carries its reduced degree
  ``|x| - 1``; a bimodule entry carries its plain degree ``|x|``;
* inserting an operation of parity ``op`` costs ``op * (degrees to its right)``;
* rotating a tail of degree ``a`` past a head of degree ``b`` costs ``a * b``;
* the diagonal bimodule twists ``mu^{r+1+s}`` by ``(sum of reduced degrees of
  the right inputs) + 1``.

``DIFFERENTIAL_SIGN`` is a global normalisation applied to every chain,
cochain and pre-morphism differential. With value -1 the Hochschild
differential of the A_N model reads ``b(d|d^k) = +N 1|d^(k-N+1)``.
"""
from __future__ import annotations

DIFFERENTIAL_SIGN = -1


def reduced(parity: int) -> int:
    return (parity + 1) & 1


def entry_degree(parity: int, marked: bool) -> int:
    return parity & 1 if marked else (parity + 1) & 1


def sign(exponent: int) -> int:
    return -1 if exponent & 1 else 1


def insertion(op_parity: int, right_degree: int) -> int:
    return sign(op_parity * right_degree)


def rotation(moved_degree: int, rest_degree: int) -> int:
    return sign(moved_degree * rest_degree)


def diagonal_twist(right_reduced: int) -> int:
    return sign(right_reduced + 1)


def reorder(parities_before: list[int], permutation: list[int]) -> int:
    """Sign of permuting graded symbols; ``permutation[i]`` is the old index of new slot i."""
    s = 0
    n = len(permutation)
    for i in range(n):
        for j in range(i + 1, n):
            if permutation[i] > permutation[j]:
                s += parities_before[permutation[i]] * parities_before[permutation[j]]
    return sign(s)
