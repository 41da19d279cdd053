"""
图、边理想与 S/I(G) 的 Hilbert 级数 (单变量与多重分次)
"""

import itertools
from math import comb

import networkx as nx

from series import ExponentVector, MultiSeries, UniSeries

PATH = "path"
CYCLE = "cycle"
GENERAL = "general"


class GraphKindError(ValueError):
    """只对路径/圈定义的操作收到了一般图"""


# ==================== 图 ====================
class Graph:
    """顶点为 1..n 的简单图, kind 标记 path / cycle / general"""

    def __init__(self, n, edges, kind=GENERAL):
        if n < 0:
            raise ValueError(f"顶点数必须非负: {n}")
        normalized = []
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"不允许自环: {i}")
            if not (1 <= min(i, j) and max(i, j) <= n):
                raise ValueError(f"边 {{{i},{j}}} 超出顶点范围 1..{n}")
            normalized.append((min(i, j), max(i, j)))
        if len(set(normalized)) != len(normalized):
            raise ValueError("存在重复的边")
        self.n = n
        self.edges = tuple(sorted(normalized))
        self.kind = kind
        if kind == PATH and set(self.edges) != {(i, i + 1) for i in range(1, n)}:
            raise ValueError("path 类型的边必须恰为 {i,i+1}")
        if kind == CYCLE:
            expected = {(i, i + 1) for i in range(1, n)} | {(1, n)}
            if n < 3 or set(self.edges) != expected:
                raise ValueError("cycle 类型要求 n >= 3 且边为 {i,i+1} 与 {1,n}")
        self._nx = nx.Graph()
        self._nx.add_nodes_from(range(1, n + 1))
        self._nx.add_edges_from(self.edges)

    @classmethod
    def from_networkx(cls, graph, kind=GENERAL):
        nodes = sorted(graph.nodes)
        relabel = {node: k for k, node in enumerate(nodes, start=1)}
        edges = [(relabel[a], relabel[b]) for a, b in graph.edges]
        return cls(len(nodes), edges, kind)

    @property
    def nx_graph(self):
        return self._nx

    def is_independent(self, support):
        chosen = set(support)
        return not any(i in chosen and j in chosen for i, j in self.edges)

    def independent_sets(self):
        """所有独立集 (含空集), 即补图中的团"""
        found = [()]
        if self.n:
            complement = nx.complement(self._nx)
            found += [tuple(sorted(c)) for c in nx.enumerate_all_cliques(complement)]
        return sorted(found, key=lambda s: (len(s), s))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.kind) == (other.n, other.edges, other.kind)

    def __hash__(self):
        return hash((self.n, self.edges, self.kind))

    def __repr__(self):
        if self.kind in (PATH, CYCLE):
            return f"Graph({self.kind}, n={self.n})"
        return f"Graph(general, n={self.n}, edges={list(self.edges)})"


def path_graph(n):
    if n < 2:
        raise ValueError(f"路径至少需要 2 个顶点: n={n}")
    return Graph.from_networkx(nx.path_graph(range(1, n + 1)), kind=PATH)


def cycle_graph(n):
    if n < 3:
        raise ValueError(f"圈至少需要 3 个顶点: n={n}")
    return Graph.from_networkx(nx.cycle_graph(range(1, n + 1)), kind=CYCLE)


def general_graph(n, edges):
    return Graph(n, edges, kind=GENERAL)


def require_path_or_cycle(g):
    if g.kind not in (PATH, CYCLE):
        raise GraphKindError(f"该操作只支持 path / cycle, 收到 {g.kind}")


def disjoint_union(g, h):
    """h 的顶点整体平移到 g 之后"""
    shifted = [(i + g.n, j + g.n) for i, j in h.edges]
    return Graph(g.n + h.n, list(g.edges) + shifted, kind=GENERAL)


def _walk_component(sub, nodes):
    """按路径/圈的走向排列连通分支的顶点"""
    degrees = dict(sub.degree)
    ends = sorted(v for v in nodes if degrees[v] == 1)
    start = ends[0] if ends else min(nodes)
    order = [start]
    previous = None
    while len(order) < len(nodes):
        current = order[-1]
        step = sorted(v for v in sub.neighbors(current) if v != previous and v not in order)
        if not step:
            break
        previous = current
        order.append(step[0])
    return order


def components(g):
    """连通分支列表: (kind, 按走向排列的顶点); 单点记为 vertex"""
    found = []
    for nodes in nx.connected_components(g.nx_graph):
        nodes = sorted(nodes)
        sub = g.nx_graph.subgraph(nodes)
        degrees = [d for _, d in sub.degree]
        k = len(nodes)
        if k == 1:
            found.append(("vertex", nodes))
        elif max(degrees) <= 2 and sub.number_of_edges() == k - 1:
            found.append((PATH, _walk_component(sub, nodes)))
        elif k >= 3 and all(d == 2 for d in degrees):
            found.append((CYCLE, _walk_component(sub, nodes)))
        else:
            found.append((GENERAL, nodes))
    return sorted(found, key=lambda item: min(item[1]))


def read_edge_list(path):
    """
    边表文本: 首个有效行为顶点数 (`n 5` 或 `5`), 之后每行 `i j`; `#` 开头为注释
    """
    n = None
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if n is None:
                if parts[0] == "n":
                    parts = parts[1:]
                if len(parts) != 1:
                    raise ValueError(f"{path}:{lineno}: 缺少顶点数头部")
                n = int(parts[0])
                continue
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: 边需要两个端点, 实际为 {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError(f"{path}: 空的边表文件")
    return general_graph(n, edges)


# ==================== 单项式理想 ====================
class MonomialIdeal:
    """单项式理想, 生成元自动约化为极小生成组"""

    def __init__(self, generators, n):
        self.n = n
        gens = set()
        for g in generators:
            g = ExponentVector(g)
            if len(g) != n:
                raise ValueError(f"生成元 {list(g)} 与环境维数 {n} 不符")
            if g.norm == 0:
                raise ValueError("单位理想不在考虑范围内")
            gens.add(g)
        minimal = [g for g in gens if not any(h != g and h.leq(g) for h in gens)]
        self.generators = tuple(sorted(minimal))

    def contains_monomial(self, m):
        return any(all(a <= b for a, b in zip(g, m)) for g in self.generators)

    @property
    def lcm(self):
        if not self.generators:
            return ExponentVector.zero(self.n)
        return ExponentVector(max(col) for col in zip(*self.generators))

    def restrict(self, a):
        """由多重次数 <= a 的生成元生成的子理想 I_{<=a}"""
        return MonomialIdeal([g for g in self.generators if g.leq(a)], self.n)

    def is_quadratic(self):
        return all(g.norm == 2 for g in self.generators)

    def is_squarefree(self):
        return all(g.is_squarefree() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, generators={[list(g) for g in self.generators]})"


def edge_ideal(g):
    return MonomialIdeal([ExponentVector.indicator(g.n, e) for e in g.edges], g.n)


def multidegree_cap(ideal):
    """生成元的最小公倍式; 所有非零 Betti 多重次数都在其下方"""
    return ideal.lcm


def random_quadratic_ideal(nvars, rng, density=0.4):
    """随机二次单项式理想 (允许平方项), 至少一个生成元"""
    quadrics = [
        ExponentVector.unit(nvars, i).plus(ExponentVector.unit(nvars, j))
        for i, j in itertools.combinations_with_replacement(range(1, nvars + 1), 2)
    ]
    chosen = [q for q in quadrics if rng.random() < density]
    if not chosen:
        chosen = [rng.choice(quadrics)]
    return MonomialIdeal(chosen, nvars)


# ==================== 独立多项式 ====================
def _path_independence(m):
    """I(P_m), m >= 0; I(P_0) = 1"""
    prev, cur = [1], [1, 1]
    if m == 0:
        return prev
    for _ in range(2, m + 1):
        shifted = [0] + prev
        size = max(len(cur), len(shifted))
        nxt = [
            (cur[k] if k < len(cur) else 0) + (shifted[k] if k < len(shifted) else 0)
            for k in range(size)
        ]
        prev, cur = cur, nxt
    return cur


def independence_polynomial(g, method="auto"):
    """i_k = 大小为 k 的独立集个数"""
    if method == "auto":
        method = "recursion" if g.kind in (PATH, CYCLE) else "enumeration"
    if method == "recursion":
        require_path_or_cycle(g)
        if g.kind == PATH:
            return _path_independence(g.n)
        # I(C_n) = I(P_{n-1}) + x·I(P_{n-3})
        a = _path_independence(g.n - 1)
        b = [0] + _path_independence(g.n - 3)
        size = max(len(a), len(b))
        return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(size)]
    if method != "enumeration":
        raise ValueError(f"未知方法: {method}")
    counts = {}
    for s in g.independent_sets():
        counts[len(s)] = counts.get(len(s), 0) + 1
    return [counts.get(k, 0) for k in range(max(counts) + 1)]


# ==================== Hilbert 级数 ====================
def hilbert_graded(g, D, method="auto"):
    """HS = Σ_k i_k (t/(1-t))^k; 支撑恰为某 k 元集的 d 次单项式有 C(d-1, k-1) 个"""
    poly = independence_polynomial(g, method=method)
    coeffs = [0] * (D + 1)
    coeffs[0] = 1
    for d in range(1, D + 1):
        coeffs[d] = sum(i_k * comb(d - 1, k - 1) for k, i_k in enumerate(poly) if k >= 1)
    return UniSeries(coeffs, D)


def _exponent_assignments(support, cap, budget):
    """给定支撑集的所有指数分配, 各分量 1..cap_i, 总和 <= budget"""
    if not support:
        yield {}
        return
    head, rest = support[0], support[1:]
    for e in range(1, min(cap[head - 1], budget - len(rest)) + 1):
        for tail in _exponent_assignments(rest, cap, budget - e):
            tail = dict(tail)
            tail[head] = e
            yield tail


def hilbert_multigraded(g, cap=None, degree_bound=None):
    """ξ^v 的系数为 1 当且仅当 Supp(v) 是独立集"""
    cap = ExponentVector(cap if cap is not None else (1,) * g.n)
    if len(cap) != g.n:
        raise ValueError(f"cap 长度 {len(cap)} 与顶点数 {g.n} 不符")
    if degree_bound is None:
        degree_bound = cap.norm
    allowed = [i for i in range(1, g.n + 1) if cap[i - 1] >= 1]
    terms = {}
    for size in range(0, min(len(allowed), degree_bound) + 1):
        for support in itertools.combinations(allowed, size):
            if not g.is_independent(support):
                continue
            for assignment in _exponent_assignments(support, cap, degree_bound):
                v = ExponentVector(assignment.get(i, 0) for i in range(1, g.n + 1))
                terms[v] = 1
    return MultiSeries(terms, cap, degree_bound)


def k_polynomial(g):
    """HS·(1-t)^n 的系数 (次数 <= n)"""
    hs = hilbert_graded(g, g.n)
    factor = UniSeries([(-1) ** k * comb(g.n, k) for k in range(g.n + 1)], g.n)
    return list((hs * factor).coeffs)
