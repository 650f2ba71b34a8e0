"""Named mutation sequence words.

Each builder returns the mutation word as a list of vertex labels in its
chart, in application order (first mutation first).  Charts: 'ij' corner
labels for a distinguished triangle, grid labels 'st' for a quadrilateral,
and star labels 'js^i' for star triangulations.
"""

from __future__ import annotations

from .polygon import InvalidParams


def mu_kj(k: int, j: int) -> list[str]:
    """mu_(k;j) = mu_kj ... mu_k1 on corner labels."""
    if j < 1 or k <= j:
        raise InvalidParams("mu_(k;j) needs 1 <= j < k")
    return [f"{k}{t}" for t in range(1, j + 1)]


def mubar_kt(k: int, t: int, n: int) -> list[str]:
    """mubar_(k;t) = mu_[k,k+1-bar] ... mu_[k,k+t-bar] on barred labels."""
    if t < 1 or k + t >= n:
        raise InvalidParams("mubar_(k;t) needs 1 <= t and k + t < n")
    return [f"{k}{k + r}~" for r in range(t, 0, -1)]


def mu_r(s: int, t: int) -> list[str]:
    """mu^r_(s;t) = mu_{s,s-1} mu_{s,s-2} ... mu_{s,s-t} on grid labels."""
    if not 0 <= t < s:
        raise InvalidParams("mu^r_(s;t) needs 0 <= t < s")
    return [f"{s}{c}" for c in range(s - t, s)]


def mu_l(s: int, t: int, n: int) -> list[str]:
    """mu^l_(s;t) = mu_{s,n-t} ... mu_{s,n-2} mu_{s,n-1} on grid labels."""
    if t < 0 or s + t >= n:
        raise InvalidParams("mu^l_(s;t) needs 0 <= t and s + t < n")
    return [f"{s}{c}" for c in range(n - 1, n - t - 1, -1)]


def mu_diamond(j: int, n: int) -> list[str]:
    """mu^<>_j = mu^r_(n-1;j-1) ... mu^r_(j;j-1); identity when j = 1."""
    if not 1 <= j <= n - 1:
        raise InvalidParams("mu^<>_j needs 1 <= j <= n-1")
    word: list[str] = []
    for s in range(j, n):
        word += mu_r(s, j - 1)
    return word


def mu_triangle(i: int, n: int) -> list[str]:
    """mu^tri_i = mu^l_(n-2;1) ... mu^l_(i;n-i-1); identity when i = n-1."""
    if not 1 <= i <= n - 1:
        raise InvalidParams("mu^tri_i needs 1 <= i <= n-1")
    word: list[str] = []
    for s in range(i, n - 1):
        word += mu_l(s, n - s - 1, n)
    return word


def mu_diamond_ij(i: int, j: int, n: int) -> list[str]:
    """mu^<>_(i;j) = mu^tri_j o (mu^l_(j-1;n-j-1) ... mu^l_(i;n-j-1))."""
    if not 1 <= i <= j <= n - 1:
        raise InvalidParams("mu^<>_(i;j) needs 1 <= i <= j")
    word: list[str] = []
    for s in range(i, j):
        word += mu_l(s, n - j - 1, n)
    return word + mu_triangle(j, n)


def mu_tilde_diamond(j: int, s: int, n: int) -> list[str]:
    """The column sweep (mu_{n-1,s-1}..mu_{j,s-1})...(mu_{n-s+1,1}..
    mu_{j-s+2,1}) on corner labels of one triangle, column c ascending."""
    if not 1 < s <= j <= n - 1:
        raise InvalidParams("mu~^<>_(j,s) needs 1 < s <= j <= n-1")
    word: list[str] = []
    for c in range(1, s):
        word += [f"{row}{c}" for row in range(j - s + c + 1, n - s + c + 1)]
    return word


# -- star-chart sequences (I(lambda) machinery) -------------------------------


def canon_star(label: str, k: int) -> str:
    """Normalize a seam label jj^i (i < k) to its canonical j0^(i+1) form."""
    body, i = label.split("^")
    j, s, i = int(body[0]), int(body[1]), int(i)
    if s == j and i < k:
        return f"{j}0^{i + 1}"
    return label


def canon_star_word(word: list[str], k: int) -> list[str]:
    return [canon_star(w, k) for w in word]


def row_path(j: int, k: int) -> list[str]:
    """The j-th row of I(lambda), right to left: j1^1 ... jj^1 j1^2 ... jj^k."""
    return [f"{j}{s}^{i}" for i in range(1, k + 1) for s in range(1, j + 1)]


def i_delta_order(n: int, k: int, i: int) -> list[str]:
    """I(Delta_i) in increasing linear order: by s ascending, j descending."""
    return [f"{j}{s}^{i}" for s in range(1, n) for j in range(n - 1, s - 1, -1)]


def i_lambda_order(n: int, k: int) -> list[str]:
    """The full linearly ordered I(lambda)."""
    out: list[str] = []
    for i in range(1, k + 1):
        out += i_delta_order(n, k, i)
    return out


def leftarrow_mu(j: int, s: int, i: int, n: int, k: int) -> list[str]:
    """Row mutation from j1^1 up to (js^i)^*: empty for the frozen jj^k."""
    if not (1 <= s <= j <= n - 1 and 1 <= i <= k):
        raise InvalidParams(f"js^i = {j}{s}^{i} outside I(lambda)")
    path = row_path(j, k)
    stop = k * j - (i - 1) * j - s
    return path[:stop]


def leftarrow_mu_prec(j: int, s: int, i: int, n: int, k: int) -> list[str]:
    """Concatenation of leftarrow words over all labels preceding js^i."""
    word: list[str] = []
    for label in i_lambda_order(n, k):
        if label == f"{j}{s}^{i}":
            break
        jj, ss, ii = int(label[0]), int(label[1]), int(label.split("^")[1])
        word += leftarrow_mu(jj, ss, ii, n, k)
    return word


def leftarrow_mu_delta(i: int, n: int, k: int) -> list[str]:
    """leftarrow mu(Delta_i): the leftarrow words of one triangle in order."""
    word: list[str] = []
    for label in i_delta_order(n, k, i):
        jj, ss = int(label[0]), int(label[1])
        word += leftarrow_mu(jj, ss, i, n, k)
    return word


def mu1_jd(j: int, d: int) -> list[str]:
    """mu^1_(j,d) = mu_{jd^1} ... mu_{j1^1} on the first-triangle labels."""
    if not 1 <= d < j:
        raise InvalidParams("mu^1_(j,d) needs 1 <= d < j")
    return [f"{j}{c}^1" for c in range(1, d + 1)]


def mu_up(ell: int, n: int) -> list[str]:
    """mu^up_ell = mu^1_(ell+1,1) ... mu^1_(n-1,n-1-ell)."""
    if not 1 <= ell <= n - 2:
        raise InvalidParams("mu^up_ell needs 1 <= ell <= n-2")
    word: list[str] = []
    for j in range(n - 1, ell, -1):
        word += mu1_jd(j, j - ell)
    return word


NAMED_SEQUENCES = {
    "mu_kj": lambda **p: mu_kj(p["k"], p["j"]),
    "mubar_kt": lambda **p: mubar_kt(p["k"], p["t"], p["n"]),
    "mu_r": lambda **p: mu_r(p["s"], p["t"]),
    "mu_l": lambda **p: mu_l(p["s"], p["t"], p["n"]),
    "mu_diamond": lambda **p: mu_diamond(p["j"], p["n"]),
    "mu_triangle": lambda **p: mu_triangle(p["i"], p["n"]),
    "mu_diamond_ij": lambda **p: mu_diamond_ij(p["i"], p["j"], p["n"]),
    "mu_tilde_diamond": lambda **p: mu_tilde_diamond(p["j"], p["s"], p["n"]),
    "leftarrow_mu": lambda **p: leftarrow_mu(p["j"], p["s"], p["i"],
                                             p["n"], p["k"]),
    "leftarrow_mu_prec": lambda **p: leftarrow_mu_prec(p["j"], p["s"],
                                                       p["i"], p["n"], p["k"]),
    "leftarrow_mu_delta": lambda **p: leftarrow_mu_delta(p["i"], p["n"],
                                                         p["k"]),
    "mu1_jd": lambda **p: mu1_jd(p["j"], p["d"]),
    "mu_up": lambda **p: mu_up(p["ell"], p["n"]),
}


def named_sequence(name: str, **params) -> list[str]:
    """Dispatch a named mutation word; raises InvalidParams/KeyError."""
    if name not in NAMED_SEQUENCES:
        raise KeyError(f"unknown named sequence {name!r}")
    return NAMED_SEQUENCES[name](**params)
