"""
S/I(P_n) 与 S/I(C_n) 的多重分次 Betti 数闭式 (块分解)
"""

import itertools
from dataclasses import dataclass

import pandas as pd

from ideals import CYCLE, PATH, components, cycle_graph, edge_ideal, path_graph, require_path_or_cycle
from series import ExponentVector


# ==================== 块分解 ====================
@dataclass(frozen=True)
class BlockDecomposition:
    """平方自由向量拆成支撑为 (循环) 区间的极大块; cyclic 时 tau/iota 即带波浪号的版本"""

    vector: ExponentVector
    blocks: tuple
    cyclic: bool

    @property
    def tau(self):
        return len(self.blocks)

    @property
    def norms(self):
        return tuple(b.norm for b in self.blocks)

    @property
    def iota(self):
        return sum(2 * d // 3 for d in self.norms)


def _runs(support):
    runs = []
    for i in support:
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def block_decompose(v, cyclic=False):
    v = ExponentVector(v)
    if not v.is_squarefree():
        raise ValueError(f"块分解只对平方自由向量定义: {list(v)}")
    n = len(v)
    support = list(v.support)
    runs = _runs(support)
    if cyclic and len(runs) > 1 and runs[0][0] == 1 and runs[-1][-1] == n:
        runs[0] = runs.pop() + runs[0]
    blocks = tuple(
        sorted((ExponentVector.indicator(n, run) for run in runs), key=lambda b: b.support[0])
    )
    return BlockDecomposition(vector=v, blocks=blocks, cyclic=cyclic)


def betti_path(n, v):
    """返回 (i, β): β = 1 当且仅当所有块范数 ≢ 1 (mod 3), 位置 i = ι(v)"""
    v = ExponentVector(v)
    if len(v) != n:
        raise ValueError(f"向量长度 {len(v)} 与 n={n} 不符")
    d = block_decompose(v, cyclic=False)
    beta = 1 if all(norm % 3 != 1 for norm in d.norms) else 0
    return d.iota, beta


def betti_cycle(n, w):
    w = ExponentVector(w)
    if len(w) != n:
        raise ValueError(f"向量长度 {len(w)} 与 n={n} 不符")
    d = block_decompose(w, cyclic=True)
    if w.norm == n:
        r = n % 3
        if r == 1:
            return -(-2 * n // 3), 1
        return d.iota, (1 if r == 2 else 2)
    beta = 1 if all(norm % 3 != 1 for norm in d.norms) else 0
    return d.iota, beta


# ==================== Betti 表 ====================
class BettiTable:
    """β_{i,v}; 只保存非零项"""

    def __init__(self, n, entries=None, source=""):
        self.n = n
        self.source = source
        self.entries = {}
        for (i, v), beta in (entries or {}).items():
            if beta < 0:
                raise ValueError(f"Betti 数不能为负: β_{i},{list(v)} = {beta}")
            if beta:
                self.entries[(int(i), ExponentVector(v))] = int(beta)
        self.entries = dict(sorted(self.entries.items(), key=lambda kv: (kv[0][1].norm, kv[0][1], kv[0][0])))

    def beta(self, i, v):
        return self.entries.get((i, tuple(v)), 0)

    @property
    def graded(self):
        totals = {}
        for (i, v), beta in self.entries.items():
            key = (i, v.norm)
            totals[key] = totals.get(key, 0) + beta
        return dict(sorted(totals.items()))

    def multidegrees(self):
        return sorted({v for _, v in self.entries})

    def degrees_at(self, v):
        return sorted(i for (i, w) in self.entries if w == tuple(v))

    def has_unique_degrees(self):
        """每个多重次数至多一个同调次数非零"""
        seen = [v for _, v in self.entries]
        return len(seen) == len(set(seen))

    def is_squarefree_supported(self):
        return all(v.is_squarefree() for _, v in self.entries)

    def restrict(self, a):
        a = ExponentVector(a)
        return BettiTable(self.n, {k: b for k, b in self.entries.items() if k[1].leq(a)}, source=self.source)

    def k_polynomial(self):
        """Σ_j Σ_i (-1)^i β_{i,j} t^j"""
        coeffs = {}
        for (i, j), beta in self.graded.items():
            coeffs[j] = coeffs.get(j, 0) + (-1) ** i * beta
        return dict(sorted(coeffs.items()))

    def to_frame(self):
        """Macaulay 风格: 行为 i, 列为 j"""
        graded = self.graded
        if not graded:
            return pd.DataFrame()
        imax = max(i for i, _ in graded)
        jmax = max(j for _, j in graded)
        frame = pd.DataFrame(0, index=range(imax + 1), columns=range(jmax + 1), dtype="int64")
        for (i, j), beta in graded.items():
            frame.loc[i, j] = beta
        frame.index.name = "i"
        frame.columns.name = "j"
        return frame

    def to_records(self):
        return [{"i": i, "v": list(v), "beta": beta} for (i, v), beta in self.entries.items()]

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable(n={self.n}, source={self.source!r}, graded={self.graded})"


def _closed_form(g):
    return betti_path if g.kind == PATH else betti_cycle


def betti_table(g):
    """所有平方自由多重次数上的闭式 Betti 表"""
    require_path_or_cycle(g)
    formula = _closed_form(g)
    entries = {}
    for bits in itertools.product((0, 1), repeat=g.n):
        v = ExponentVector(bits)
        i, beta = formula(g.n, v)
        if beta:
            entries[(i, v)] = beta
    table = BettiTable(g.n, entries, source="closed form")
    assert table.has_unique_degrees()
    return table


def graded_betti(g):
    """只要分次 Betti 数时, 圈按旋转轨道代表元计数再乘以轨道长度"""
    require_path_or_cycle(g)
    if g.kind == PATH:
        return betti_table(g).graded
    n = g.n
    totals = {}
    full = (1,) * n
    for bits in itertools.product((0, 1), repeat=n):
        if bits == full:
            continue
        orbit = {bits[k:] + bits[:k] for k in range(n)}
        if bits != min(orbit):
            continue
        i, beta = betti_cycle(n, bits)
        if beta:
            key = (i, sum(bits))
            totals[key] = totals.get(key, 0) + beta * len(orbit)
    i, beta = betti_cycle(n, full)
    totals[(i, n)] = totals.get((i, n), 0) + beta
    return dict(sorted(totals.items()))


def restricted_ideal_betti(g, a):
    """I_{<=a} 的 Betti 表, 等于原表中 v <= a 的部分"""
    a = ExponentVector(a)
    if g.kind in (PATH, CYCLE):
        return betti_table(g).restrict(a)
    import koszul

    table, _ = koszul.homology(edge_ideal(g).restrict(a), cap=a)
    return table


# ==================== 不交并的张量分解 ====================
def betti_polynomial(table):
    """{(i, j): β_{i,j}}"""
    return dict(table.graded) if isinstance(table, BettiTable) else dict(table)


def tensor_betti(tables):
    """各分支 Betti 多项式之积"""
    result = {(0, 0): 1}
    for table in tables:
        poly = betti_polynomial(table)
        product = {}
        for (i1, j1), b1 in result.items():
            for (i2, j2), b2 in poly.items():
                key = (i1 + i2, j1 + j2)
                product[key] = product.get(key, 0) + b1 * b2
        result = {k: b for k, b in product.items() if b}
    return dict(sorted(result.items()))


def betti_disjoint_union(g):
    """分支都是路径/圈 (或孤立点) 时, 由各分支闭式得到分次 Betti 数"""
    factors = []
    for kind, nodes in components(g):
        if kind == "vertex":
            factors.append({(0, 0): 1})
        elif kind == PATH:
            factors.append(graded_betti(path_graph(len(nodes))))
        elif kind == CYCLE:
            factors.append(graded_betti(cycle_graph(len(nodes))))
        else:
            raise ValueError(f"分支 {nodes} 既不是路径也不是圈")
    return tensor_betti(factors)
