"""
S/I(P_n) 与 S/I(C_n) 的偏差数, γ_s / α_s 序列, 以及相关结论的数值检查
"""

import itertools
from dataclasses import dataclass, field
from math import comb

import pandas as pd

from ideals import CYCLE, PATH, GraphKindError, cycle_graph, hilbert_graded, hilbert_multigraded, path_graph
from reporting import CONJECTURE, OBSERVATION, THEOREM, CheckReport
from series import (
    ExponentVector,
    extract_deviations_multi,
    extract_deviations_uni,
    uni_inv,
    uni_neg_var,
)


class LinearityError(ValueError):
    """三个不同 n 上的偏差数不满足 ε_s = γ_s n - α_s"""


def deviations_graded(g, smax):
    """P = 1/HS(-z), 再逐次剥离"""
    if smax < 1:
        raise ValueError("smax 必须 >= 1")
    P = uni_inv(uni_neg_var(hilbert_graded(g, smax)))
    return extract_deviations_uni(P, metadata={"kind": g.kind, "n": g.n})


def deviations_multigraded(g, cap=None, degree_bound=None):
    cap = ExponentVector(cap if cap is not None else (1,) * g.n)
    if degree_bound is None:
        degree_bound = cap.norm
    hs = hilbert_multigraded(g, cap, degree_bound)
    return extract_deviations_multi(hs, metadata={"kind": g.kind})


def _graph(kind, n):
    if kind == PATH:
        return path_graph(n)
    if kind == CYCLE:
        return cycle_graph(n)
    raise GraphKindError(f"未知的图类型: {kind}")


# ==================== γ_s, α_s ====================
@dataclass
class SequencePair:
    """ε_s(S/I(P_n)) = γ_s n - α_s (s <= n+1)"""

    gamma: dict = field(default_factory=dict)
    alpha: dict = field(default_factory=dict)
    smax: int = 0

    def __post_init__(self):
        negative = [s for s in self.gamma if self.gamma[s] < 0 or self.alpha.get(s, 0) < 0]
        if negative:
            raise LinearityError(f"linearity violated: negative γ/α at s={negative[0]}")

    def predicted_path(self, s, n):
        return self.gamma[s] * n - self.alpha[s]

    def to_frame(self):
        rows = [{"s": s, "gamma": self.gamma[s], "alpha": self.alpha[s]} for s in range(1, self.smax + 1)]
        return pd.DataFrame(rows, columns=["s", "gamma", "alpha"])


def gamma_alpha(smax):
    """
    由 n = m, m+1 两条路径解出 γ_s, α_s, 再用 n = m+2 验证; m = max(smax, 3)
    """
    if smax < 1:
        raise ValueError("smax 必须 >= 1")
    m = max(smax, 3)
    e0, e1, e2 = (deviations_graded(path_graph(n), smax) for n in (m, m + 1, m + 2))
    gamma, alpha = {}, {}
    for s in range(1, smax + 1):
        g = e1.epsilon(s) - e0.epsilon(s)
        a = g * m - e0.epsilon(s)
        if g * (m + 2) - a != e2.epsilon(s):
            raise LinearityError(
                f"linearity violated at s={s}: ε_s(P_{m + 2}) = {e2.epsilon(s)}, predicted {g * (m + 2) - a}"
            )
        gamma[s], alpha[s] = g, a
    return SequencePair(gamma=gamma, alpha=alpha, smax=smax)


def check_linearity(nmin=3, nmax=12, pairs=None):
    """ε_s(P_n) = γ_s n - α_s (s <= n+1); ε_s(C_n) = γ_s n (s < n), ε_n(C_n) = γ_n n - 1"""
    pairs = pairs if pairs is not None and pairs.smax >= nmax + 1 else gamma_alpha(nmax + 1)
    details = []
    witness = None
    for n in range(nmin, nmax + 1):
        path = deviations_graded(path_graph(n), n + 1)
        cycle = deviations_graded(cycle_graph(n), n)
        for s in range(1, n + 2):
            expected = pairs.predicted_path(s, n)
            ok = path.epsilon(s) == expected
            details.append({"kind": PATH, "n": n, "s": s, "epsilon": path.epsilon(s), "predicted": expected, "ok": ok})
            if not ok and witness is None:
                witness = (PATH, n, s)
        for s in range(1, n + 1):
            expected = pairs.gamma[s] * n - (1 if s == n else 0)
            ok = cycle.epsilon(s) == expected
            details.append({"kind": CYCLE, "n": n, "s": s, "epsilon": cycle.epsilon(s), "predicted": expected, "ok": ok})
            if not ok and witness is None:
                witness = (CYCLE, n, s)
    return CheckReport(
        name=f"deviation linearity in n, {nmin} <= n <= {nmax}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
        details=details,
    )


# ==================== 支撑集性质 ====================
def is_interval(support):
    support = sorted(support)
    return bool(support) and support[-1] - support[0] + 1 == len(support)


def is_cyclic_interval(support, n):
    """区间, 或形如 {1..a} ∪ {b..n}; 整个 {1..n} 也算"""
    chosen = set(support)
    if not chosen:
        return False
    starts = [i for i in chosen if ((i - 2) % n) + 1 not in chosen]
    return len(starts) <= 1


def check_support_property(g, table):
    """非零 ε_v 的支撑集必须是区间 (路径) 或循环区间 (圈)"""
    if g.kind == PATH:
        admissible = is_interval
    elif g.kind == CYCLE:
        def admissible(support):
            return is_cyclic_interval(support, g.n)
    else:
        raise GraphKindError(f"支撑集性质只对 path / cycle 成立, 收到 {g.kind}")
    witness = next((v for v, e in table.multigraded.items() if e and not admissible(v.support)), None)
    return CheckReport(
        name=f"interval support of nonzero deviations on {g.kind} n={g.n}",
        kind=THEOREM,
        passed=witness is None,
        witness=None if witness is None else list(witness),
    )


def _squarefree_vectors(n):
    for bits in itertools.product((0, 1), repeat=n):
        if any(bits):
            yield ExponentVector(bits)


def check_squarefree_deviations(n):
    """
    平方自由 v: ε_v = 1 当且仅当支撑集是 (循环) 区间; 圈上另有 ε_{1_n} = n-1
    """
    full = ExponentVector((1,) * n)
    path = deviations_multigraded(path_graph(n), full, n)
    cycle = deviations_multigraded(cycle_graph(n), full, n) if n >= 3 else None
    witness = None
    for v in _squarefree_vectors(n):
        expected = 1 if is_interval(v.support) else 0
        if path.epsilon_v(v) != expected:
            witness = (PATH, list(v), path.epsilon_v(v), expected)
            break
        if cycle is None:
            continue
        if v == full:
            expected = n - 1
        else:
            expected = 1 if is_cyclic_interval(v.support, n) else 0
        if cycle.epsilon_v(v) != expected:
            witness = (CYCLE, list(v), cycle.epsilon_v(v), expected)
            break
    return CheckReport(
        name=f"squarefree multigraded deviations, n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )


def check_stability(n, cap=None, degree_bound=None):
    """
    (a) ε_v(P_n) = ε_{v^a}(P_{n+1});  (b) 圈上同样成立, 当 v_1 = 0 或 v_n = 0;
    (c) 同一条件下 ε_v(P_n) = ε_v(C_n).  v^a 为在末尾补 0
    """
    if degree_bound is None:
        degree_bound = n
    cap = ExponentVector(cap if cap is not None else (degree_bound,) * n)
    cap_next = ExponentVector(tuple(cap) + (cap[-1],))
    p_n = deviations_multigraded(path_graph(n), cap, degree_bound)
    p_next = deviations_multigraded(path_graph(n + 1), cap_next, degree_bound)
    c_n = deviations_multigraded(cycle_graph(n), cap, degree_bound)
    c_next = deviations_multigraded(cycle_graph(n + 1), cap_next, degree_bound)

    def lifted(table):
        return {ExponentVector(v[:-1]) for v in table.multigraded if v[-1] == 0}

    witness = None
    for v in sorted(set(p_n.multigraded) | lifted(p_next)):
        if p_n.epsilon_v(v) != p_next.epsilon_v(v.append_zero()):
            witness = ("append path", list(v))
            break
    if witness is None:
        border = sorted(
            v for v in set(c_n.multigraded) | lifted(c_next) | set(p_n.multigraded) if v[0] == 0 or v[-1] == 0
        )
        for v in border:
            if c_n.epsilon_v(v) != c_next.epsilon_v(v.append_zero()):
                witness = ("append cycle", list(v))
                break
            if p_n.epsilon_v(v) != c_n.epsilon_v(v):
                witness = ("path vs cycle", list(v))
                break
    return CheckReport(
        name=f"border stability of multigraded deviations, n={n}, norm <= {degree_bound}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )


def check_orbit_structure(n, smax=None):
    """圈上 s < n: 固定范数的 ε_v 在 Z_n 轨道上为常数, 非零个数被 n 整除"""
    smax = n - 1 if smax is None else min(smax, n - 1)
    table = deviations_multigraded(cycle_graph(n), (smax,) * n, smax)
    witness = None
    for s in range(1, smax + 1):
        nonzero = table.nonzero_multidegrees(norm=s)
        for v in nonzero:
            values = {table.epsilon_v(v.rotated(k)) for k in range(n)}
            if len(values) != 1:
                witness = ("orbit", list(v))
                break
        if witness is None and len(nonzero) % n != 0:
            witness = ("count", s, len(nonzero))
        if witness is not None:
            break
    return CheckReport(
        name=f"rotation orbits of cycle deviations, n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )


def check_graded_consistency(g, degree_bound):
    """Σ_{‖v‖=s} ε_v = ε_s"""
    multi = deviations_multigraded(g, (degree_bound,) * g.n, degree_bound)
    graded = deviations_graded(g, degree_bound)
    sums = multi.norm_sums()
    witness = next(
        (s for s in range(1, degree_bound + 1) if sums.get(s, 0) != graded.epsilon(s)),
        None,
    )
    return CheckReport(
        name=f"graded vs multigraded deviations on {g.kind} n={g.n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )


# ==================== 经验规律 ====================
def _cycle_patterns(n, pairs):
    g = pairs.gamma
    return {
        "cycle eps_{n+1}": (n + 1, g[n + 1] * n - n),
        "cycle eps_{n+2}": (n + 2, g[n + 2] * n - comb(n + 2, 2) + 1),
        "cycle eps_{n+3}": (n + 3, g[n + 3] * n - comb(n + 3, 3) - comb(n + 1, 2) + 1),
    }


def _path_patterns(n, pairs):
    g, a = pairs.gamma, pairs.alpha
    return {
        "path eps_{n+2}": (n + 2, g[n + 2] * n - a[n + 2] + 1),
        "path eps_{n+3}": (n + 3, g[n + 3] * n - a[n + 3] + n + 2),
        "path eps_{n+4}": (n + 4, g[n + 4] * n - a[n + 4] + comb(n + 4, 2) - 1),
        "path eps_{n+5}": (n + 5, g[n + 5] * n - a[n + 5] + comb(n + 5, 3) - comb(n + 3, 2) - 1),
    }


# 与计算值不符的公式 -> 观察到的差值 ε - predicted
DISCREPANT_PATTERNS = {
    "path eps_{n+5}": lambda n: (n + 2) * (n + 3),
}


def _discrepancy_report(label, nmin, nmax, rows):
    offset = DISCREPANT_PATTERNS[label]
    for r in rows:
        r["difference"] = r["epsilon"] - r["predicted"]
    bad = next((r["n"] for r in rows if r["difference"] != offset(r["n"])), None)
    return CheckReport(
        name=f"{label}, {nmin} <= n <= {nmax}",
        kind=OBSERVATION,
        passed=bad is None,
        witness=None if bad is None else ("n", bad),
        details=rows,
        note="discrepancy: epsilon - predicted = (n+2)(n+3)",
    )


def check_higher_patterns(nmax=8, nmin=3, pairs=None):
    """
    七个高阶偏差公式, 每个公式一份报告 (conjectural pattern)
    DISCREPANT_PATTERNS 中的公式与计算值不符, 只作为 observation 报告差值
    """
    if pairs is None or pairs.smax < nmax + 5:
        pairs = gamma_alpha(nmax + 5)
    rows = []
    for n in range(nmin, nmax + 1):
        path = deviations_graded(path_graph(n), n + 5)
        cycle = deviations_graded(cycle_graph(n), n + 3)
        for label, (s, predicted) in _cycle_patterns(n, pairs).items():
            rows.append({"pattern": label, "n": n, "s": s, "epsilon": cycle.epsilon(s), "predicted": predicted})
        for label, (s, predicted) in _path_patterns(n, pairs).items():
            rows.append({"pattern": label, "n": n, "s": s, "epsilon": path.epsilon(s), "predicted": predicted})
    reports = []
    for label in dict.fromkeys(r["pattern"] for r in rows):
        mine = [r for r in rows if r["pattern"] == label]
        if label in DISCREPANT_PATTERNS:
            reports.append(_discrepancy_report(label, nmin, nmax, mine))
            continue
        bad = next((r["n"] for r in mine if r["epsilon"] != r["predicted"]), None)
        reports.append(
            CheckReport(
                name=f"{label}, {nmin} <= n <= {nmax}",
                kind=CONJECTURE,
                passed=bad is None,
                witness=None if bad is None else ("n", bad),
                details=mine,
                note="conjectural pattern",
            )
        )
    return reports


def ratio_report(pairs):
    """相邻 γ_s, α_s 的比值; 仅报告"""
    rows = []
    for s in range(1, pairs.smax + 1):
        row = {"s": s, "gamma": pairs.gamma[s], "alpha": pairs.alpha[s], "gamma_ratio": None, "alpha_ratio": None}
        if s > 1 and pairs.gamma[s - 1]:
            row["gamma_ratio"] = round(pairs.gamma[s] / pairs.gamma[s - 1], 6)
        if s > 1 and pairs.alpha[s - 1]:
            row["alpha_ratio"] = round(pairs.alpha[s] / pairs.alpha[s - 1], 6)
        rows.append(row)
    frame = pd.DataFrame(rows, columns=["s", "gamma", "alpha", "gamma_ratio", "alpha_ratio"])
    return CheckReport(
        name=f"growth ratios of gamma/alpha up to s={pairs.smax}",
        kind=OBSERVATION,
        passed=True,
        details=frame.to_dict(orient="records"),
    )


def check_cycle_dominance(pairs=None, nmax=10):
    """α_s >= 0, 且 n > s 时 ε_s(C_n) >= ε_s(P_n)"""
    pairs = pairs if pairs is not None and pairs.smax >= nmax else gamma_alpha(nmax)
    witness = next((("alpha", s) for s in range(1, pairs.smax + 1) if pairs.alpha[s] < 0), None)
    for n in range(3, nmax + 1):
        if witness is not None:
            break
        path = deviations_graded(path_graph(n), n - 1)
        cycle = deviations_graded(cycle_graph(n), n - 1)
        for s in range(1, n):
            if cycle.epsilon(s) < path.epsilon(s):
                witness = ("dominance", n, s)
                break
    return CheckReport(
        name=f"cycle deviations dominate path deviations, n <= {nmax}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )
