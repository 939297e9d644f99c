"""Brute-force reference semantics used only by the tests.

Positions are absolute (no suffix canonicalisation) and every quantifier
tries k = 1..K for a generous K, so agreement with the library is a real
cross-check of its periodicity shortcuts.
"""

from __future__ import annotations

from tel.core import And, Atom, Box, Const, Diamond, Exists, Forall, Not, Or, Shift, Sum, Var


def letter(w, i):
    if i <= len(w.prefix):
        return w.prefix[i - 1]
    return w.loop[(i - len(w.prefix) - 1) % len(w.loop)]


def holds(w, symbol, i):
    pos = letter(w, i)
    return pos == symbol if isinstance(pos, str) else symbol in pos


def term(t, env):
    match t:
        case Const(v):
            return v
        case Var(name):
            return env[name]
        case Sum(left, right):
            return term(left, env) + term(right, env)
    raise TypeError(t)


def default_k(w):
    return 3 * (len(w.prefix) + len(w.loop)) + 3


def truth(w, i, phi, env=None, k=None):
    """Two-valued truth with quantifiers truncated at ``k``."""
    k = k or default_k(w)
    memo = {}

    def ev(node, i, env):
        key = (id(node), i, tuple(sorted(env.items())))
        if key in memo:
            return memo[key]
        match node:
            case Atom(s):
                out = holds(w, s, i)
            case Shift(body, by):
                out = ev(body, i + term(by, env), env)
            case Not(body):
                out = not ev(body, i, env)
            case And(left, right):
                out = ev(left, i, env) and ev(right, i, env)
            case Or(left, right):
                out = ev(left, i, env) or ev(right, i, env)
            case Box(bound, body):
                out = all(ev(body, j, env) for j in range(i, i + term(bound, env)))
            case Diamond(bound, body):
                out = any(ev(body, j, env) for j in range(i, i + term(bound, env)))
            case Exists(x, body):
                out = any(ev(body, i, {**env, x: n}) for n in range(1, k + 1))
            case Forall(x, body):
                out = all(ev(body, i, {**env, x: n}) for n in range(1, k + 1))
            case _:
                raise TypeError(node)
        memo[key] = out
        return out

    return ev(phi, i, dict(env or {}))


def unroll(w, n):
    return [letter(w, i) for i in range(1, n + 1)]


def ltl_truth(w, i, phi, horizon=None):
    """LTL by direct unrolling over a few periods; no fixpoints."""
    from tel.translate import ast as T

    ell, p = len(w.prefix), len(w.loop)
    horizon = horizon or ell + 3 * p + 3

    def canon(j):
        return j if j <= ell + p else ell + 1 + (j - ell - 1) % p

    def ev(f, j):
        j = canon(j)
        match f:
            case T.LAtom(s):
                return holds(w, s, j)
            case T.LNot(g):
                return not ev(g, j)
            case T.LAnd(a, b):
                return ev(a, j) and ev(b, j)
            case T.LOr(a, b):
                return ev(a, j) or ev(b, j)
            case T.Next(g):
                return ev(g, j + 1)
            case T.Finally(g):
                return any(ev(g, j + n) for n in range(horizon))
            case T.Globally(g):
                return all(ev(g, j + n) for n in range(horizon))
            case T.Until(a, b):
                return _until(lambda n: ev(a, j + n), lambda n: ev(b, j + n), horizon)
            case T.WeakUntil(a, b):
                return all(ev(a, j + n) for n in range(horizon)) or _until(
                    lambda n: ev(a, j + n), lambda n: ev(b, j + n), horizon
                )
            case T.StrongRelease(a, b):
                return _until(lambda n: ev(b, j + n), lambda n: ev(a, j + n) and ev(b, j + n), horizon)
            case T.Release(a, b):
                return all(ev(b, j + n) for n in range(horizon)) or _until(
                    lambda n: ev(b, j + n), lambda n: ev(a, j + n) and ev(b, j + n), horizon
                )
        raise TypeError(f)

    return ev(phi, i)


def _until(left, right, horizon):
    for n in range(horizon):
        if right(n):
            return True
        if not left(n):
            return False
    return False


def tcl_truth(w, s, phi, horizon=None):
    """Allen patterns by brute-force boundary search over absolute positions."""
    from tel.translate import ast as T
    from tel.translate.tcl import ROWS

    ell, p = len(w.prefix), len(w.loop)
    horizon = horizon or 3 * (ell + p) + 2
    tail = ell + p  # positions past s checked for the forever segment

    def vec(f, j):
        match f:
            case T.TAtom(sym):
                return holds(w, sym, j)
            case T.TNot(g):
                return not vec(g, j)
            case T.TAnd(a, b):
                return vec(a, j) and vec(b, j)
            case T.TOr(a, b):
                return vec(a, j) or vec(b, j)
            case T.Allen(kind, a, b):
                row = ROWS[kind]

                def want(t, cell):
                    return (vec(a, t), vec(b, t)) == cell

                def search(start, idx):
                    if idx == len(row) - 1:
                        return all(want(t, row[idx]) for t in range(start, start + tail + p))
                    for end in range(start + 1, s_abs + horizon + 1):
                        if not want(end - 1, row[idx]):
                            return False
                        if search(end, idx + 1):
                            return True
                    return False

                s_abs = j
                return search(j, 0)
        raise TypeError(f)

    return vec(phi, s)


def unroll_from(w, i, n):
    return [letter(w, j) for j in range(i, i + n)]


def all_codes(k, n):
    """Every length-``n`` sequence over ``range(k)`` as an (k**n, n) array."""
    import numpy as np

    grids = np.indices((k,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int32)


def run_mask(A, tiles, codes, ell):
    """Direct run simulation for a batch of lassos over ``tiles`` codes."""
    import numpy as np

    state = np.array([t.split("__")[0] for t in tiles])
    letter = np.array([t.split("__")[1] for t in tiles])
    allowed = np.array(
        [[state[j] in A.successors(state[i], letter[i]) for j in range(len(tiles))] for i in range(len(tiles))]
    )
    n = codes.shape[1]
    ok = state[codes[:, 0]] == A.initial
    nxt = list(range(1, n)) + [ell]
    for j in range(n):
        ok &= allowed[codes[:, j], codes[:, nxt[j]]]
    return ok


def accept_mask(A, tiles, codes, ell):
    import numpy as np

    good = np.array([t.split("__")[0] in A.accepting for t in tiles])
    return good[codes[:, ell:]].any(axis=1)
