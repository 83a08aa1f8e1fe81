"""Evaluate a scheme as an exact counting algorithm.

A class value a(sigma, n, values) is defined by structural recursion:

* 0 if sigma is a zero class, or if the value tuple breaks one of the
  class's forced gaps (sentinels i_0 = 0, i_{k+1} = n+1);
* 1 when the prefix is the whole permutation (n = k): the class then holds
  exactly the arrangement sigma itself, which avoids the patterns because
  non-zero classes do;
* for an expanded class, the sum over every way to insert one more prefix
  value into an open slot, handing off to the matching refinement at the
  same n -- a partition of the class by its next entry, which exists
  because n > k here;
* for a reduced class, the value of the one-shorter class at n-1 on the
  tuple with the deleted value removed and larger values shifted down.

Expansion grows the prefix (bounded by the scheme depth) and reduction
shrinks n, so the recursion terminates; all arithmetic is exact Python
integers. ``sequence`` runs bottom-up in n keeping only two adjacent
layers alive, which bounds memory by the per-size key count.
"""

from __future__ import annotations

from itertools import combinations

from .perms import Perm, delete_rank
from .scheme import Scheme


class SchemeIntegrityError(Exception):
    """A count referenced a class the scheme does not define."""


def _check_key(sigma: Perm, n: int, values: tuple[int, ...]) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if len(values) != len(sigma):
        raise ValueError(f"{len(values)} values for a length-{len(sigma)} prefix")
    if list(values) != sorted(set(values)) or any(not 1 <= v <= n for v in values):
        raise ValueError(f"values must be strictly increasing within 1..{n}: {values}")


def count_class(scheme: Scheme, sigma: Perm, n: int, values: "tuple[int, ...] | list[int]") -> int:
    """Exact size of one prefix class, by memoized top-down recursion."""
    sigma = tuple(sigma)
    vals = tuple(values)
    _check_key(sigma, n, vals)
    return _eval_recursive(scheme, sigma, n, vals, {})


def _eval_recursive(
    scheme: Scheme, sigma: Perm, n: int, values: tuple[int, ...], memo: dict
) -> int:
    key = (sigma, n, values)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if sigma in scheme.zero:
        result = 0
    else:
        entry = scheme.expa.get(sigma)
        rentry = scheme.redu.get(sigma) if entry is None else None
        if entry is None and rentry is None:
            raise SchemeIntegrityError(f"class {sigma} absent from scheme")
        gaps = entry.gaps if entry is not None else rentry.gaps
        if gaps.violated(values, n):
            result = 0
        elif n == len(sigma):
            result = 1
        elif entry is not None:
            ext = (0,) + values + (n + 1,)
            total = 0
            for j in range(1, len(sigma) + 2):
                child = entry.children[j - 1]
                before, after = values[: j - 1], values[j - 1 :]
                for r in range(ext[j - 1] + 1, ext[j]):
                    total += _eval_recursive(scheme, child, n, before + (r,) + after, memo)
            result = total
        else:
            rank = rentry.rank
            reduced = values[: rank - 1] + tuple(v - 1 for v in values[rank:])
            result = _eval_recursive(
                scheme, delete_rank(sigma, rank), n - 1, reduced, memo
            )
    memo[key] = result
    return result


def _eval_in_layer(
    scheme: Scheme,
    sigma: Perm,
    n: int,
    values: tuple[int, ...],
    cur: dict,
    prev: dict,
) -> int:
    entry = scheme.expa.get(sigma)
    rentry = scheme.redu.get(sigma) if entry is None else None
    gaps = entry.gaps if entry is not None else rentry.gaps
    if gaps.violated(values, n):
        return 0
    if n == len(sigma):
        return 1
    if entry is not None:
        ext = (0,) + values + (n + 1,)
        total = 0
        for j in range(1, len(sigma) + 2):
            child = entry.children[j - 1]
            if child in scheme.zero:
                continue
            if child not in scheme.expa and child not in scheme.redu:
                raise SchemeIntegrityError(f"class {child} absent from scheme")
            before, after = values[: j - 1], values[j - 1 :]
            for r in range(ext[j - 1] + 1, ext[j]):
                total += cur[(child, before + (r,) + after)]
        return total
    rank = rentry.rank
    smaller = delete_rank(sigma, rank)
    reduced = values[: rank - 1] + tuple(v - 1 for v in values[rank:])
    if smaller in scheme.zero:
        return 0
    if smaller not in scheme.expa and smaller not in scheme.redu:
        raise SchemeIntegrityError(f"class {smaller} absent from scheme")
    return prev[(smaller, reduced)]


def _layer_roots(scheme: Scheme, upto: int):
    # Longer prefixes first: expansion references same-n tuples of the
    # refinements, reduction references the completed previous layer.
    classes = sorted(set(scheme.expa) | set(scheme.redu), key=lambda s: (-len(s), s))
    prev: dict = {}
    for n in range(0, upto + 1):
        cur: dict = {}
        for sigma in classes:
            for values in combinations(range(1, n + 1), len(sigma)):
                cur[(sigma, values)] = _eval_in_layer(scheme, sigma, n, values, cur, prev)
        yield n, cur[((), ())], len(cur)
        prev = cur


def count(scheme: Scheme, n: int) -> int:
    """Number of avoiders of size n according to the scheme."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    for m, root, _ in _layer_roots(scheme, n):
        if m == n:
            return root
    raise AssertionError("unreachable")


def sequence(scheme: Scheme, length: int) -> list[int]:
    """The counts for n = 1..length, computed bottom-up with layer reuse."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return [root for m, root, _ in _layer_roots(scheme, length) if m >= 1]


def layer_key_counts(scheme: Scheme, length: int) -> list[int]:
    """Number of memo keys per size layer; exposes the polynomial growth."""
    return [keys for _, _, keys in _layer_roots(scheme, length)]
