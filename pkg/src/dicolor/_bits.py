"""Bitmask helpers for the exponential searches (vertex sets as Python ints)."""


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reach(out_masks, start: int, within: int) -> int:
    """Vertices of ``within`` reachable from ``start`` (inclusive) along arcs inside ``within``."""
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= out_masks[u]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def closes_cycle(out_masks, in_masks, cls: int, v: int) -> bool:
    """Would adding ``v`` to the acyclic set ``cls`` create a directed cycle?

    A new cycle must pass through v, i.e. leave along an arc v->a and return
    along b->v with a path a ~> b inside ``cls``.
    """
    target = in_masks[v] & cls
    if not target:
        return False
    frontier = out_masks[v] & cls
    seen = frontier
    while frontier:
        if frontier & target:
            return True
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= out_masks[u]
        nxt &= cls & ~seen
        seen |= nxt
        frontier = nxt
    return False


def popcount(mask: int) -> int:
    return bin(mask).count("1")
