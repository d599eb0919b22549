import functools

from drinfeld.algebra import Ideal
from drinfeld.forms import cusp_form_space, eigenforms
from drinfeld.quotient import build_quotient


@functools.lru_cache(maxsize=None)
def level(q: int, s: str) -> Ideal:
    return Ideal.parse(q, s)


@functools.lru_cache(maxsize=None)
def graph(q: int, s: str):
    return build_quotient(level(q, s))


@functools.lru_cache(maxsize=None)
def space(q: int, s: str):
    return cusp_form_space(graph(q, s))


@functools.lru_cache(maxsize=None)
def newforms(q: int, s: str, tag: str = "a"):
    return eigenforms(space(q, s), tag=tag)


# the smallest coprime pair of levels that both carry newforms
PAIR = (2, "T^3+T+1", "T^3+T^2+1")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = {}


def criterion(n: int, ok: bool, detail: str):
    ACCEPTANCE[n] = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(ACCEPTANCE[n])
    return ok
