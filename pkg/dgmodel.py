"""
路径/圈边理想极小模型 S[X] / S[X~] 的平方自由部分
变量、微分 (Leibniz 法则)、约化复形 k[X] 的 strand 与其同调
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from betti import BettiTable, block_decompose
from exact_linalg import ExactField, Subspace, columns, composes_to_zero, mat_vec, rank, zero_matrix
from ideals import CYCLE, PATH
from reporting import THEOREM, CheckReport
from series import ExponentVector

PATH_X = "path-x"
CYCLE_X = "cycle-x"
CYCLE_W = "cycle-w"

_KIND_ORDER = {PATH_X: 0, CYCLE_X: 1, CYCLE_W: 2}


class ModelIndexError(ValueError):
    """模型变量或 (P, Q) 序列的下标不合法"""


# ==================== 变量 ====================
@dataclass(frozen=True)
class ModelVariable:
    """
    path-x: x[p,q], 1 <= p <= q <= n, 支撑 {p..q}
    cycle-x: xt[p,q], 沿圈从 p 走到 q 的弧, 长度 <= n-1
    cycle-w: w[i], 1 <= i <= n-1, 多重次数 1_n, 次数 n-1
    p == q 时即环变量 T_p (次数 0)
    """

    kind: str
    n: int
    p: int
    q: int = 0

    def __post_init__(self):
        n, p, q = self.n, self.p, self.q
        if self.kind == PATH_X:
            ok = 1 <= p <= q <= n
        elif self.kind == CYCLE_X:
            ok = n >= 3 and 1 <= p <= n and 1 <= q <= n and (q % n) + 1 != p
        elif self.kind == CYCLE_W:
            ok = n >= 3 and 1 <= p <= n - 1 and q == 0
        else:
            raise ModelIndexError(f"未知的变量类型: {self.kind}")
        if not ok:
            raise ModelIndexError(f"非法的模型变量 {self.kind}({p},{q}) , n={n}")

    @property
    def arc(self):
        """沿支撑的有序下标"""
        if self.kind == PATH_X:
            return tuple(range(self.p, self.q + 1))
        if self.kind == CYCLE_W:
            return tuple(((self.p - 1 + k) % self.n) + 1 for k in range(self.n))
        length = (self.q - self.p) % self.n + 1
        return tuple(((self.p - 1 + k) % self.n) + 1 for k in range(length))

    @property
    def support(self):
        return frozenset(self.arc)

    @property
    def degree(self):
        return len(self.arc) - 1

    @property
    def multidegree(self):
        return ExponentVector.indicator(self.n, self.arc)

    @property
    def is_ring_variable(self):
        return self.kind != CYCLE_W and self.p == self.q

    @property
    def sort_key(self):
        return (min(self.arc), _KIND_ORDER[self.kind], self.p, self.q)

    def render(self):
        if self.is_ring_variable:
            return f"T[{self.p}]"
        if self.kind == PATH_X:
            return f"x[{self.p},{self.q}]"
        if self.kind == CYCLE_X:
            return f"xt[{self.p},{self.q}]"
        return f"w[{self.p}]"

    def __repr__(self):
        return self.render()


def x(p, q, n):
    return ModelVariable(PATH_X, n, p, q)


def xt(p, q, n):
    """下标按模 n 约化到 1..n"""
    return ModelVariable(CYCLE_X, n, ((p - 1) % n) + 1, ((q - 1) % n) + 1)


def w(i, n):
    return ModelVariable(CYCLE_W, n, i)


def T(i, n, kind=PATH_X):
    return ModelVariable(kind, n, i, i)


def _family(graph_kind):
    if graph_kind == PATH:
        return x
    if graph_kind == CYCLE:
        return xt
    raise ModelIndexError(f"极小模型只对 path / cycle 构造, 收到 {graph_kind}")


def model_variables(kind, n):
    """所有平方自由变量 (含 T_i 与 w_i)"""
    if kind == PATH:
        found = [x(p, q, n) for p in range(1, n + 1) for q in range(p, n + 1)]
    elif kind == CYCLE:
        found = [
            xt(p, p + length - 1, n) for p in range(1, n + 1) for length in range(1, n)
        ]
        found += [w(i, n) for i in range(1, n)]
    else:
        raise ModelIndexError(f"未知的图类型: {kind}")
    return sorted(found, key=lambda var: (var.degree, var.sort_key))


# ==================== 单项式与和式 ====================
def normalize(variables):
    """按 sort_key 排序, 返回 (Koszul 符号, 有序元组); 支撑必须两两不交"""
    items = list(variables)
    seen = set()
    for var in items:
        if seen & var.support:
            raise ModelIndexError(f"单项式中的变量支撑相交: {items}")
        seen |= var.support
    sign = 1
    for a in range(1, len(items)):
        b = a
        while b > 0 and items[b - 1].sort_key > items[b].sort_key:
            if items[b - 1].degree * items[b].degree % 2:
                sign = -sign
            items[b - 1], items[b] = items[b], items[b - 1]
            b -= 1
    return sign, tuple(items)


class ModelMonomial:
    """有序变量元组与系数"""

    __slots__ = ("variables", "coefficient")

    def __init__(self, variables, coefficient=1):
        self.variables = tuple(variables)
        self.coefficient = coefficient

    @property
    def degree(self):
        return sum(v.degree for v in self.variables)

    @property
    def multidegree(self):
        if not self.variables:
            raise ValueError("空单项式没有确定的环境维数")
        total = ExponentVector.zero(self.variables[0].n)
        for var in self.variables:
            total = total.plus(var.multidegree)
        return total

    def render(self):
        return "*".join(v.render() for v in self.variables) or "1"

    def __eq__(self, other):
        return (
            isinstance(other, ModelMonomial)
            and self.variables == other.variables
            and self.coefficient == other.coefficient
        )

    def __repr__(self):
        return f"ModelMonomial({self.coefficient}, {self.render()})"


class ModelSum:
    """正规形单项式的线性组合, 系数为整数或 Fraction"""

    def __init__(self, terms=None):
        self.terms = {}
        for key, coef in (terms or {}).items():
            self.add_term(key, coef)

    @classmethod
    def monomial(cls, variables, coefficient=1):
        sign, key = normalize(variables)
        return cls({key: sign * coefficient})

    def add_term(self, variables, coefficient):
        sign, key = normalize(variables)
        value = self.terms.get(key, 0) + sign * coefficient
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    def __add__(self, other):
        out = ModelSum(self.terms)
        for key, coef in other.terms.items():
            out.add_term(key, coef)
        return out

    def scaled(self, c):
        return ModelSum({key: c * coef for key, coef in self.terms.items()})

    def coefficient(self, variables):
        """有序乘积 Π variables 的系数"""
        sign, key = normalize(variables)
        return sign * self.terms.get(key, 0)

    def is_zero(self):
        return not self.terms

    def monomials(self):
        for key in sorted(self.terms, key=lambda k: [v.sort_key for v in k]):
            yield ModelMonomial(key, self.terms[key])

    def __eq__(self, other):
        if not isinstance(other, ModelSum):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"ModelSum({render(self)})"


def render(expr):
    """稳定的文本形式, 如 `-x[1,2]*x[3,4] + T[1]*x[2,4]`"""
    if isinstance(expr, ModelVariable):
        return expr.render()
    if isinstance(expr, ModelMonomial):
        expr = ModelSum({expr.variables: expr.coefficient})
    parts = []
    for mono in expr.monomials():
        c = mono.coefficient
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = mono.render() if mag == 1 else f"{mag}*{mono.render()}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ==================== 微分 ====================
def variable_differential(var):
    """
    ∂x_{p,q} = Σ_r (-1)^{|x_{p,r}|} x_{p,r} x_{r+1,q}  (x_{i,i} = T_i)
    ∂w_i = Σ_{r=i}^{n+i-2} (-1)^{r-i} xt_{i,r} xt_{r+1,n+i-1}
    """
    out = ModelSum()
    if var.is_ring_variable:
        return out
    arc = var.arc
    make = x if var.kind == PATH_X else xt
    for k in range(len(arc) - 1):
        left = make(arc[0], arc[k], var.n)
        right = make(arc[k + 1], arc[-1], var.n)
        out.add_term((left, right), -1 if k % 2 else 1)
    return out


def reduced_differential(var):
    """k[X] = S[X] ⊗ k: 含 T 的项全部去掉"""
    full = variable_differential(var)
    return ModelSum(
        {key: c for key, c in full.terms.items() if not any(v.is_ring_variable for v in key)}
    )


def differential(expr, reduced=False):
    """Leibniz: ∂(a_1...a_k) = Σ_j (-1)^{|a_1|+...+|a_{j-1}|} a_1...∂a_j...a_k"""
    if isinstance(expr, ModelVariable):
        expr = ModelSum.monomial((expr,))
    rule = reduced_differential if reduced else variable_differential
    out = ModelSum()
    for key, coef in expr.terms.items():
        prefix = 0
        for j, var in enumerate(key):
            sign = -1 if prefix % 2 else 1
            for dkey, dcoef in rule(var).terms.items():
                if reduced and any(v.is_ring_variable for v in key[:j] + key[j + 1:]):
                    continue
                out.add_term(key[:j] + dkey + key[j + 1:], sign * coef * dcoef)
            prefix += var.degree
    return out


# ==================== k[X] 的 strand ====================
def _compositions(run):
    """把有序下标序列切成长度 >= 2 的连续段"""
    if not run:
        yield ()
        return
    for size in range(2, len(run) + 1):
        for rest in _compositions(run[size:]):
            yield (tuple(run[:size]),) + rest


def _cyclic_runs(v):
    d = block_decompose(v, cyclic=True)
    runs = []
    for block in d.blocks:
        support = list(block.support)
        if len(support) < len(v) and support[0] == 1 and support[-1] == len(v):
            # 跨过 n -> 1 的块: 从缺口之后开始
            gap = next(i for i in range(1, len(v) + 1) if i not in block.support)
            start = next(i for i in range(gap, len(v) + 1) if i in block.support)
            support = [i for i in range(start, len(v) + 1)] + [i for i in range(1, start) if i in block.support]
        runs.append(support)
    return runs


def _full_cycle_partitions(n):
    """把 1..n 沿圈分成至少两段、每段长度 >= 2 的方式; 以各段的末端集合标识"""
    for size in range(2, n // 2 + 1):
        for ends in itertools.combinations(range(1, n + 1), size):
            gaps = [(ends[(k + 1) % size] - ends[k]) % n for k in range(size)]
            if all(g >= 2 for g in gaps):
                yield [
                    tuple(((ends[k] + t) % n) + 1 for t in range(gaps[k]))
                    for k in range(size)
                ]


class StrandOfModel:
    """k[X] 在平方自由多重次数 v 上的分量; differentials[h]: 次数 h -> h-1"""

    def __init__(self, kind, n, v):
        v = ExponentVector(v)
        if len(v) != n or not v.is_squarefree():
            raise ValueError(f"v 必须是长度 {n} 的平方自由向量: {list(v)}")
        make = _family(kind)
        self.kind, self.n, self.v = kind, n, v
        monomials = []
        if kind == CYCLE and v.norm == n:
            for pieces in _full_cycle_partitions(n):
                monomials.append([make(piece[0], piece[-1], n) for piece in pieces])
            monomials += [[w(i, n)] for i in range(1, n)]
        else:
            runs = _cyclic_runs(v) if kind == CYCLE else [list(b.support) for b in block_decompose(v).blocks]
            for choice in itertools.product(*(list(_compositions(run)) for run in runs)):
                monomials.append([make(piece[0], piece[-1], n) for block in choice for piece in block])
        self.basis = {}
        for variables in monomials:
            _, key = normalize(variables)
            h = sum(var.degree for var in key)
            self.basis.setdefault(h, []).append(key)
        for h in self.basis:
            self.basis[h] = sorted(set(self.basis[h]), key=lambda k: [var.sort_key for var in k])
        self.index = {h: {key: j for j, key in enumerate(keys)} for h, keys in self.basis.items()}
        self.differentials = {h: self._differential(h) for h in self.degrees if h >= 1}

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, h):
        return len(self.basis.get(h, ()))

    def _differential(self, h):
        D = zero_matrix(self.dim(h - 1), self.dim(h))
        target = self.index.get(h - 1, {})
        for col, key in enumerate(self.basis[h]):
            image = differential(ModelSum({key: 1}), reduced=True)
            for dkey, coef in image.terms.items():
                if dkey not in target:
                    raise AssertionError(f"微分的像 {dkey} 不在 strand {list(self.v)} 中")
                D[target[dkey], col] += coef
        return D

    def boundary_matrix(self, h):
        if h in self.differentials:
            return self.differentials[h]
        return zero_matrix(self.dim(h - 1), self.dim(h))

    def check_square_zero(self):
        return all(
            composes_to_zero(self.boundary_matrix(h - 1), self.boundary_matrix(h))
            for h in self.degrees
            if h >= 2
        )

    def homology_dims(self, field=None):
        field = field or ExactField(0)
        dims = {}
        for h in self.degrees:
            d = self.dim(h)
            kernel = d - (rank(self.boundary_matrix(h), field) if h >= 1 and self.dim(h - 1) else 0)
            image = rank(self.boundary_matrix(h + 1), field) if self.dim(h + 1) else 0
            if kernel - image:
                dims[h] = kernel - image
        return dims

    def vector(self, expr, h, field):
        vec = [field.element(0)] * self.dim(h)
        for key, coef in expr.terms.items():
            if key not in self.index.get(h, {}):
                raise ValueError(f"{key} 不是 strand {list(self.v)} 次数 {h} 的基元素")
            vec[self.index[h][key]] = field.element(coef)
        return vec

    def is_cycle(self, expr, field=None):
        field = field or ExactField(0)
        h = _homogeneous_degree(expr)
        if h == 0 or not self.dim(h - 1):
            return True
        image = mat_vec(self.boundary_matrix(h), self.vector(expr, h, field), field)
        return all(field.is_zero(c) for c in image)

    def is_boundary(self, expr, field=None):
        field = field or ExactField(0)
        h = _homogeneous_degree(expr)
        vec = self.vector(expr, h, field)
        if all(field.is_zero(c) for c in vec):
            return True
        space = Subspace(self.dim(h), field)
        for col in columns(self.boundary_matrix(h + 1)) if self.dim(h + 1) else []:
            space.add(col)
        return space.contains(vec)


def _homogeneous_degree(expr):
    degrees = {sum(v.degree for v in key) for key in expr.terms}
    if len(degrees) > 1:
        raise ValueError("和式的同调次数不唯一")
    return degrees.pop() if degrees else 0


def _homogeneous_multidegree(expr):
    mdegs = {ModelMonomial(key).multidegree for key in expr.terms}
    if len(mdegs) != 1:
        raise ValueError("和式必须非零且多重次数唯一")
    return mdegs.pop()


@lru_cache(maxsize=None)
def strand_of_model(kind, n, v):
    return StrandOfModel(kind, n, tuple(v))


def _as_sum(m):
    if isinstance(m, ModelMonomial):
        return ModelSum({m.variables: m.coefficient})
    return m


def is_cycle(m, kind, n):
    m = _as_sum(m)
    return strand_of_model(kind, n, _homogeneous_multidegree(m)).is_cycle(m)


def is_boundary(m, kind, n):
    m = _as_sum(m)
    return strand_of_model(kind, n, _homogeneous_multidegree(m)).is_boundary(m)


def model_homology(kind, n, cap=None, characteristic=0):
    """所有平方自由 v <= cap 的 strand 同调维数"""
    cap = ExponentVector(min(c, 1) for c in (cap if cap is not None else (1,) * n))
    field = ExactField(characteristic)
    entries = {}
    for bits in itertools.product(*(range(c + 1) for c in cap)):
        v = ExponentVector(bits)
        for h, d in strand_of_model(kind, n, v).homology_dims(field).items():
            entries[(h, v)] = d
    return BettiTable(n, entries, source=f"model {field.name}")


# ==================== (P, Q) 序列 ====================
def gamma_indices(P, Q):
    """Γ = {i > 1 : p_i = q_{i-1} + 1}; P(i) 删去 p_i, Q(i) 删去 q_{i-1} (下标从 1 开始)"""
    P, Q = [int(p) for p in P], [int(q) for q in Q]
    if not P or len(P) != len(Q):
        raise ModelIndexError(f"P, Q 必须等长且非空: {P}, {Q}")
    for k in range(len(P)):
        if not P[k] < Q[k]:
            raise ModelIndexError(f"要求 p_{k + 1} < q_{k + 1}: {P}, {Q}")
        if k + 1 < len(P) and not Q[k] < P[k + 1]:
            raise ModelIndexError(f"要求 q_{k + 1} < p_{k + 2}: {P}, {Q}")
    gamma = [i for i in range(2, len(P) + 1) if P[i - 1] == Q[i - 2] + 1]
    deletions = {i: (P[: i - 1] + P[i:], Q[: i - 2] + Q[i - 1:]) for i in gamma}
    return gamma, deletions


def _check_range(kind, n, P, Q):
    gamma_indices(P, Q)
    if kind == PATH:
        ok = P[0] >= 1 and Q[-1] <= n
    elif kind == CYCLE:
        ok = 1 <= P[0] <= n and Q[-1] <= P[0] + n - 1 and Q[0] < P[0] + n - 1
    else:
        raise ModelIndexError(f"未知的图类型: {kind}")
    if not ok:
        raise ModelIndexError(f"(P, Q) = ({list(P)}, {list(Q)}) 超出 n={n} 的范围")


def b_factors(kind, n, P, Q):
    """B_{P,Q} 按 P 的顺序排列的变量"""
    _check_range(kind, n, P, Q)
    make = _family(kind)
    return [make(p, q, n) for p, q in zip(P, Q)]


def b_monomial(kind, n, P, Q):
    return ModelSum.monomial(b_factors(kind, n, P, Q))


def _starred_blocks(start, limit):
    """从 start 起、q <= limit 的块序列, 满足 q-p ∈ {1,2}, 且长为 2 的非末块后留空隙"""
    for p in range(start, limit):
        for length in (1, 2):
            q = p + length
            if q > limit:
                continue
            yield [(p, q)]
            for rest in _starred_blocks(q + 1 if length == 2 else q + 2, limit):
                yield [(p, q)] + rest


def admissible_sequences(kind, n):
    """
    满足 q_i - p_i ∈ {1,2} 且短块 (q_i - p_i = 1) 之后留空隙的全部 (P, Q)
    路径上末块不受限制; 圈上按循环顺序判断, 末块之后是 p_1 + n, 结果按单项式去重
    """
    found = []
    if kind == PATH:
        for blocks in _starred_blocks(1, n):
            found.append(([p for p, _ in blocks], [q for _, q in blocks]))
        return found
    if kind != CYCLE:
        raise ModelIndexError(f"未知的图类型: {kind}")
    seen = set()
    limit_of = lambda p1: p1 + n - 1  # noqa: E731
    for p1 in range(1, n + 1):
        for blocks in _starred_blocks(p1, limit_of(p1)):
            if blocks[0][0] != p1:
                continue
            P, Q = [p for p, _ in blocks], [q for _, q in blocks]
            if Q[-1] - P[-1] == 1 and Q[-1] >= p1 + n - 1:
                continue
            _, key = normalize(b_factors(kind, n, P, Q))
            if key not in seen:
                seen.add(key)
                found.append((P, Q))
    return found


# ==================== 检查 ====================
def check_square_zero(kind, n):
    """符号层面 ∂² = 0 (S[X] 中), 以及所有平方自由 strand 上矩阵相乘为零"""
    witness = None
    for var in model_variables(kind, n):
        if var.is_ring_variable:
            continue
        if not differential(variable_differential(var)).is_zero():
            witness = ("symbolic", var.render())
            break
    if witness is None:
        for bits in itertools.product((0, 1), repeat=n):
            if not strand_of_model(kind, n, bits).check_square_zero():
                witness = ("strand", list(bits))
                break
    return CheckReport(
        name=f"square-zero differential of the {kind} model, n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )


def check_not_boundary(kind, n):
    """所有满足条件的 B_{P,Q} 都是循环而不是边界"""
    if n <= 3:
        raise ValueError("该性质要求 n > 3")
    witness = None
    checked = 0
    for P, Q in admissible_sequences(kind, n):
        B = b_monomial(kind, n, P, Q)
        checked += 1
        if not is_cycle(B, kind, n) or is_boundary(B, kind, n):
            witness = (P, Q)
            break
    return CheckReport(
        name=f"admissible B_(P,Q) are non-bounding cycles, {kind} n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
        note=f"{checked} sequences",
    )


def _random_pair(kind, n, rng):
    """随机合法 (P, Q), 块长 >= 2"""
    start = 1 if kind == PATH else rng.randint(1, n)
    limit = n if kind == PATH else start + n - 1
    P, Q = [], []
    p = start
    while p < limit:
        top = min(limit, p + 3)
        if kind == CYCLE and not P:
            top = min(top, start + n - 2)
        q = rng.randint(p + 1, top)
        P.append(p)
        Q.append(q)
        p = q + rng.choice((1, 1, 2))
        if rng.random() < 0.2:
            break
    return P, Q


def _identity_applies(kind, n, P, Q):
    covered = sum(q - p + 1 for p, q in zip(P, Q))
    if covered < n:
        return True
    return len(P) > (1 if kind == PATH else 2)


def check_coefficient_identity(kind, n, rng, samples=25):
    """
    ∂(Σ_{i∈Γ} λ_i B_{P(i),Q(i)}) 中 B_{P,Q} 的系数 = Σ_{i∈Γ} (-1)^{Σ_{j<i}(q_j-p_j)} λ_i
    """
    witness = None
    tried = 0
    attempts = 0
    while tried < samples and attempts < 50 * samples:
        attempts += 1
        P, Q = _random_pair(kind, n, rng)
        gamma, deletions = gamma_indices(P, Q)
        if not gamma or not _identity_applies(kind, n, P, Q):
            continue
        tried += 1
        lam = {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in gamma}
        total = ModelSum()
        for i in gamma:
            total = total + b_monomial(kind, n, *deletions[i]).scaled(lam[i])
        got = differential(total, reduced=True).coefficient(b_factors(kind, n, P, Q))
        expected = sum((-1) ** sum(Q[j] - P[j] for j in range(i - 1)) * lam[i] for i in gamma)
        if got != expected:
            witness = (P, Q)
            break
    return CheckReport(
        name=f"coefficient identity for merged monomials, {kind} n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
        note=f"{tried} samples",
    )


def check_w_cycles(n):
    """z_i = ∂w_i 在 S[X~] 中是循环, 且 z_1..z_{n-1} 线性无关"""
    zs = [variable_differential(w(i, n)) for i in range(1, n)]
    witness = next((("not a cycle", i + 1) for i, z in enumerate(zs) if not differential(z).is_zero()), None)
    if witness is None:
        keys = sorted({key for z in zs for key in z.terms}, key=lambda k: [v.sort_key for v in k])
        matrix = [[z.terms.get(key, 0) for key in keys] for z in zs]
        r = rank(matrix, ExactField(0))
        if r != n - 1:
            witness = ("rank", r)
    return CheckReport(
        name=f"independent cycles z_i = d(w_i), n={n}",
        kind=THEOREM,
        passed=witness is None,
        witness=witness,
    )
