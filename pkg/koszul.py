"""
R = S/I 上的 Koszul 复形 K^R = R ⊗ Λ(e_1..e_n)
按多重次数分成有限维的 strand, 精确计算同调、同调基与乘法
"""

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from betti import BettiTable
from exact_linalg import ExactField, Subspace, columns, composes_to_zero, nullspace, rank, zero_matrix
from ideals import multidegree_cap
from reporting import CHARACTERISTIC, THEOREM, CheckReport
from series import ExponentVector


class ResourceBoundError(ValueError):
    """strand 维数或顶点数超过配置上限"""


class StrandBasisElement(NamedTuple):
    """m ⊗ e_J, J 升序"""

    monomial: ExponentVector
    exterior: tuple

    @property
    def degree(self):
        return len(self.exterior)

    @property
    def multidegree(self):
        return self.monomial.plus(ExponentVector.indicator(len(self.monomial), self.exterior))


def merge_sign(left, right):
    """把两个升序列表合并排序所需置换的符号; 有公共元素时为 0"""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def _vectors_below(cap):
    """v <= cap, 按 (范数, 字典序) 排列"""
    vectors = [ExponentVector(v) for v in itertools.product(*(range(c + 1) for c in cap))]
    return sorted(vectors, key=lambda v: (v.norm, v))


# ==================== strand ====================
class StrandComplex:
    """固定多重次数 v 的子复形; differentials[i] 是 C_i -> C_{i-1} 的矩阵"""

    def __init__(self, ideal, v):
        self.ideal = ideal
        self.v = ExponentVector(v)
        support = self.v.support
        self.basis = {}
        for size in range(len(support) + 1):
            elements = []
            for J in itertools.combinations(support, size):
                m = self.v.minus(ExponentVector.indicator(len(self.v), J))
                if not ideal.contains_monomial(m):
                    elements.append(StrandBasisElement(m, J))
            if elements:
                self.basis[size] = elements
        self.index = {i: {e: k for k, e in enumerate(elems)} for i, elems in self.basis.items()}
        self.differentials = {i: self._differential(i) for i in self.degrees if i >= 1}

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, i):
        return len(self.basis.get(i, ()))

    @property
    def total_dim(self):
        return sum(len(b) for b in self.basis.values())

    def _differential(self, i):
        """∂(m⊗e_J) = Σ_{j∈J} (-1)^{pos(j)} (m·t_j) ⊗ e_{J\\j}, 落入 I 的项为零"""
        D = zero_matrix(self.dim(i - 1), self.dim(i))
        target = self.index.get(i - 1, {})
        for col, elem in enumerate(self.basis[i]):
            for pos, j in enumerate(elem.exterior):
                m = elem.monomial.plus(ExponentVector.unit(len(self.v), j))
                if self.ideal.contains_monomial(m):
                    continue
                rest = elem.exterior[:pos] + elem.exterior[pos + 1:]
                D[target[StrandBasisElement(m, rest)], col] += -1 if pos % 2 else 1
        return D

    def boundary_matrix(self, i):
        if i in self.differentials:
            return self.differentials[i]
        return zero_matrix(self.dim(i - 1), self.dim(i))

    def check_square_zero(self):
        return all(
            composes_to_zero(self.boundary_matrix(i - 1), self.boundary_matrix(i))
            for i in self.degrees
            if i >= 2
        )

    def vector(self, chain, i, field):
        """chain: {StrandBasisElement: coef} -> C_i 中的坐标向量"""
        vec = [field.element(0)] * self.dim(i)
        for elem, coef in chain.items():
            vec[self.index[i][elem]] = field.element(vec[self.index[i][elem]] + coef)
        return vec


def strand(ideal, v):
    return StrandComplex(ideal, v)


# ==================== 同调 ====================
@dataclass
class _StrandHomology:
    """H_{i,v}: 代表元向量, 以及可以表示任意循环的子空间 (边界 + 代表元)"""

    i: int
    v: ExponentVector
    cycles_dim: int
    boundary_rank: int
    representatives: list
    space: Subspace

    @property
    def dimension(self):
        return len(self.representatives)


@dataclass(frozen=True)
class HomologyClass:
    """H_{i,v} 中的元素, coords 是关于同调基的坐标"""

    i: int
    v: ExponentVector
    coords: tuple

    def is_zero(self):
        return all(c == 0 for c in self.coords)


class HomologyBasis:
    """各 (i, v) 的代表元; 只读"""

    def __init__(self, engine, keys):
        self._engine = engine
        self.keys = sorted(keys, key=lambda k: (k[1].norm, k[1], k[0]))

    def representatives(self, i, v):
        return list(self._engine.homology_at(i, v).representatives)

    def dimension(self, i, v):
        return self._engine.homology_at(i, v).dimension

    def classes(self, i, v):
        return self._engine.basis_classes(i, v)

    def __iter__(self):
        return iter(self.keys)


class KoszulComplex:
    """缓存各 strand 与其同调; characteristic 为 0 或素数"""

    def __init__(self, ideal, characteristic=0, max_strand_dim=None):
        self.ideal = ideal
        self.field = ExactField(characteristic)
        self.max_strand_dim = max_strand_dim
        self._strands = {}
        self._homology = {}

    @property
    def n(self):
        return self.ideal.n

    def strand(self, v):
        v = ExponentVector(v)
        if v not in self._strands:
            complex_ = StrandComplex(self.ideal, v)
            if self.max_strand_dim is not None and complex_.total_dim > self.max_strand_dim:
                raise ResourceBoundError(
                    f"strand {list(v)} 的维数 {complex_.total_dim} 超过上限 {self.max_strand_dim}"
                )
            self._strands[v] = complex_
        return self._strands[v]

    def homology_at(self, i, v):
        v = ExponentVector(v)
        key = (i, v)
        if key in self._homology:
            return self._homology[key]
        field = self.field
        st = self.strand(v)
        dim = st.dim(i)
        if dim == 0:
            cycles = []
        elif i == 0:
            cycles = [[field.element(int(r == c)) for r in range(dim)] for c in range(dim)]
        else:
            cycles = nullspace(st.boundary_matrix(i), dim, field)
        space = Subspace(dim, field)
        boundaries = 0
        if dim and st.dim(i + 1):
            for k, col in enumerate(columns(st.boundary_matrix(i + 1))):
                if space.add(col, tag=("b", k)):
                    boundaries += 1
        representatives = []
        for z in cycles:
            if space.add(z, tag=("h", len(representatives))):
                representatives.append(field.vector(z))
        if dim and st.dim(i + 1):
            # 与无分数消元得到的秩互相印证
            assert boundaries == rank(st.boundary_matrix(i + 1), field)
        result = _StrandHomology(i, v, len(cycles), boundaries, representatives, space)
        assert result.dimension == len(cycles) - boundaries
        self._homology[key] = result
        return result

    def dimension(self, i, v):
        return self.homology_at(i, v).dimension

    def basis_classes(self, i, v):
        d = self.dimension(i, v)
        one, zero = self.field.element(1), self.field.element(0)
        return [
            HomologyClass(i, ExponentVector(v), tuple(one if k == j else zero for k in range(d)))
            for j in range(d)
        ]

    def representative(self, cls):
        """类的代表链 {StrandBasisElement: coef}"""
        data = self.homology_at(cls.i, cls.v)
        st = self.strand(cls.v)
        vec = [self.field.element(0)] * st.dim(cls.i)
        for c, rep in zip(cls.coords, data.representatives):
            if c:
                vec = [self.field.element(a + c * b) for a, b in zip(vec, rep)]
        return {st.basis[cls.i][k]: x for k, x in enumerate(vec) if x}

    def class_of(self, chain, i, v):
        """把一个显式循环表示为同调类; 不是循环时报错"""
        v = ExponentVector(v)
        st = self.strand(v)
        data = self.homology_at(i, v)
        if st.dim(i) == 0:
            return HomologyClass(i, v, ())
        vec = st.vector(chain, i, self.field)
        combo = data.space.express(vec)
        if combo is None:
            raise ValueError(f"给定的链不是 H_{i},{list(v)} 中的循环")
        zero = self.field.element(0)
        coords = tuple(self.field.element(combo.get(("h", k), zero)) for k in range(data.dimension))
        return HomologyClass(i, v, coords)

    def multiply_chains(self, left, right):
        """外代数符号乘积, 单项式落入 I 时为零"""
        out = {}
        for a, ca in left.items():
            for b, cb in right.items():
                sign = merge_sign(a.exterior, b.exterior)
                if sign == 0:
                    continue
                m = a.monomial.plus(b.monomial)
                if self.ideal.contains_monomial(m):
                    continue
                key = StrandBasisElement(m, tuple(sorted(a.exterior + b.exterior)))
                value = self.field.element(out.get(key, 0) + sign * ca * cb)
                if value:
                    out[key] = value
                else:
                    out.pop(key, None)
        return out

    def multiply(self, a, b):
        chain = self.multiply_chains(self.representative(a), self.representative(b))
        return self.class_of(chain, a.i + b.i, a.v.plus(b.v))

    def boundary_perturb(self, cls, rng):
        """代表元加上一个随机边界"""
        chain = self.representative(cls)
        st = self.strand(cls.v)
        if not st.dim(cls.i + 1):
            return chain
        D = st.boundary_matrix(cls.i + 1)
        weights = [rng.randint(-3, 3) for _ in range(st.dim(cls.i + 1))]
        for row in range(st.dim(cls.i)):
            shift = sum(int(D[row, k]) * w for k, w in enumerate(weights))
            if shift:
                elem = st.basis[cls.i][row]
                value = self.field.element(chain.get(elem, 0) + shift)
                if value:
                    chain[elem] = value
                else:
                    chain.pop(elem, None)
        return chain

    # ---------- 全表 ----------
    def multidegrees(self, cap=None):
        cap = ExponentVector(cap if cap is not None else multidegree_cap(self.ideal))
        if len(cap) != self.n:
            raise ValueError(f"cap 长度 {len(cap)} 与变量数 {self.n} 不符")
        return _vectors_below(cap)

    def homology(self, cap=None):
        entries = {}
        for v in self.multidegrees(cap):
            for i in self.strand(v).degrees:
                d = self.dimension(i, v)
                if d:
                    entries[(i, v)] = d
        table = BettiTable(self.n, entries, source=f"koszul {self.field.name}")
        return table, HomologyBasis(self, entries.keys())

    def nonzero_keys(self, cap=None):
        table, _ = self.homology(cap)
        return list(table.entries)

    # ---------- 子代数 ----------
    def _span(self, i, v, products):
        """H_{i,v} 的坐标子空间, 由给定的类张成"""
        space = Subspace(self.dimension(i, v), self.field)
        for cls in products:
            if not cls.is_zero():
                space.add(list(cls.coords))
        return space

    def _classes_of_space(self, i, v, space):
        return [HomologyClass(i, ExponentVector(v), tuple(vec)) for vec in space.basis]

    def decomposable_span(self, i, v):
        """正次数类两两乘积在 H_{i,v} 中张成的子空间维数"""
        v = ExponentVector(v)
        products = []
        for v1 in _vectors_below(v):
            v2 = v.minus(v1)
            if v1.norm == 0 or v2.norm == 0:
                continue
            for i1 in range(1, i):
                if not self.dimension(i1, v1) or not self.dimension(i - i1, v2):
                    continue
                for a in self.basis_classes(i1, v1):
                    for b in self.basis_classes(i - i1, v2):
                        products.append(self.multiply(a, b))
        return self._span(i, v, products).dimension

    def subalgebra_span(self, generators, cap=None):
        """由生成元 (双次数 (i,j) 或显式类) 与单位元生成的子代数, 按次数逐层闭包"""
        keys = self.nonzero_keys(cap)
        gens = []
        for g in generators:
            if isinstance(g, HomologyClass):
                gens.append(g)
                continue
            gi, gj = g
            for (i, v) in keys:
                if i == gi and v.norm == gj:
                    gens.extend(self.basis_classes(i, v))
        gens = [g for g in gens if g.i >= 1 and not g.is_zero()]
        spans = {}
        for (i, v) in sorted(keys, key=lambda k: (k[0], k[1].norm, k[1])):
            if i == 0:
                spans[(i, v)] = self._span(i, v, self.basis_classes(i, v))
                continue
            products = []
            for g in gens:
                if g.i > i or not g.v.leq(v):
                    continue
                rest_key = (i - g.i, v.minus(g.v))
                if rest_key not in spans:
                    continue
                for a in self._classes_of_space(rest_key[0], rest_key[1], spans[rest_key]):
                    products.append(self.multiply(g, a))
            spans[(i, v)] = self._span(i, v, products)
        return SpanTable(
            dims={k: s.dimension for k, s in spans.items()},
            full={k: self.dimension(*k) for k in spans},
        )

    def _power_layers(self, start, cap, keys):
        """start 层逐次乘以 H_{1,2}: 返回 {(i, v): span}"""
        multipliers = [c for (i, v) in keys if i == 1 and v.norm == 2 for c in self.basis_classes(i, v)]
        layers = dict(start)
        frontier = dict(start)
        while frontier:
            grown = {}
            for (i, v), space in frontier.items():
                for a in self._classes_of_space(i, v, space):
                    for g in multipliers:
                        target = (i + 1, v.plus(g.v))
                        if not target[1].leq(cap):
                            continue
                        grown.setdefault(target, []).append(self.multiply(g, a))
            frontier = {k: self._span(k[0], k[1], prods) for k, prods in grown.items()}
            layers.update(frontier)
        return layers

    def check_diagonals(self, cap=None):
        """
        j <= 2i; H_{i,2i} = (H_{1,2})^i; H_{i,2i-1} = (H_{1,2})^{i-2} H_{2,3}
        """
        cap = ExponentVector(cap if cap is not None else multidegree_cap(self.ideal))
        keys = self.nonzero_keys(cap)
        witness = next((("above 2i", i, list(v)) for (i, v) in keys if v.norm > 2 * i), None)
        top_start = {
            (1, v): self._span(1, v, self.basis_classes(1, v)) for (i, v) in keys if i == 1 and v.norm == 2
        }
        second_start = {
            (2, v): self._span(2, v, self.basis_classes(2, v)) for (i, v) in keys if i == 2 and v.norm == 3
        }
        top = self._power_layers(top_start, cap, keys)
        second = self._power_layers(second_start, cap, keys)
        for (i, v) in keys:
            if witness is not None:
                break
            if i >= 1 and v.norm == 2 * i:
                got = top[(i, v)].dimension if (i, v) in top else 0
                if got != self.dimension(i, v):
                    witness = ("top diagonal", i, list(v))
            elif i >= 2 and v.norm == 2 * i - 1:
                got = second[(i, v)].dimension if (i, v) in second else 0
                if got != self.dimension(i, v):
                    witness = ("second diagonal", i, list(v))
        return CheckReport(
            name=f"diagonal generation of Koszul homology, {self.ideal!r}",
            kind=THEOREM,
            passed=witness is None,
            witness=witness,
        )

    def minimal_generator_bidegrees(self, cap=None):
        found = set()
        for (i, v) in self.nonzero_keys(cap):
            if i >= 1 and self.decomposable_span(i, v) < self.dimension(i, v):
                found.add((i, v.norm))
        return found


@dataclass
class SpanTable:
    """子代数各 (i, v) 的维数与 H_{i,v} 的维数"""

    dims: dict
    full: dict

    def gaps(self):
        return {k: self.full[k] - d for k, d in sorted(self.dims.items(), key=lambda kv: (kv[0][1].norm, kv[0])) if d < self.full[k]}

    def is_full(self):
        return not self.gaps()

    def graded_gaps(self):
        totals = {}
        for (i, v), gap in self.gaps().items():
            totals[(i, v.norm)] = totals.get((i, v.norm), 0) + gap
        return dict(sorted(totals.items()))


# ==================== 模块级入口 ====================
def homology(ideal, cap=None, characteristic=0, max_strand_dim=None):
    return KoszulComplex(ideal, characteristic, max_strand_dim).homology(cap)


def multiply(engine, a, b):
    return engine.multiply(a, b)


def subalgebra_span(ideal, generators, cap=None, characteristic=0):
    return KoszulComplex(ideal, characteristic).subalgebra_span(generators, cap)


def check_diagonals(ideal, cap=None, characteristic=0):
    return KoszulComplex(ideal, characteristic).check_diagonals(cap)


def minimal_generator_bidegrees(ideal, cap=None, characteristic=0):
    return KoszulComplex(ideal, characteristic).minimal_generator_bidegrees(cap)


def compare_characteristics(ideal, p, cap=None):
    """Q 与 GF(p) 上同调维数的差异; 只报告"""
    rational, _ = homology(ideal, cap, 0)
    modular, _ = homology(ideal, cap, p)
    keys = sorted(set(rational.entries) | set(modular.entries), key=lambda k: (k[1].norm, k[1], k[0]))
    details = [
        {"i": i, "v": list(v), "QQ": rational.beta(i, v), f"GF({p})": modular.beta(i, v)}
        for (i, v) in keys
        if rational.beta(i, v) != modular.beta(i, v)
    ]
    return CheckReport(
        name=f"Koszul homology over QQ vs GF({p}), {ideal!r}",
        kind=CHARACTERISTIC,
        passed=not details,
        witness=None if not details else (details[0]["i"], details[0]["v"]),
        details=details,
    )


def square_zero_everywhere(engine, cap=None):
    return all(engine.strand(v).check_square_zero() for v in engine.multidegrees(cap))
