"""
截断幂级数运算 - 单变量与多变量, 精确整数系数
从乘积展开式中剥离出 deviations (偏差数)
"""

from dataclasses import dataclass, field
from math import comb

import pandas as pd


class TruncationMismatchError(ValueError):
    """两个级数的截断参数不一致"""


class DeviationExtractionError(ValueError):
    """剥离得到负值或残差不为零: 输入不是 Koszul 商环的级数"""


def generalized_binomial(e, k):
    """广义二项式系数 C(e, k), e 可以为负整数"""
    if k < 0:
        return 0
    if e >= 0:
        return comb(e, k)
    return (-1) ** k * comb(-e + k - 1, k)


# ==================== 多重次数向量 ====================
class ExponentVector(tuple):
    """多重次数 v=(v_1,...,v_n), 分量为非负整数; 下标对外按 1 开始计"""

    __slots__ = ()

    def __new__(cls, components):
        comps = tuple(int(c) for c in components)
        if any(c < 0 for c in comps):
            raise ValueError(f"指数向量分量必须非负: {comps}")
        return super().__new__(cls, comps)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def unit(cls, n, i):
        return cls(1 if k == i else 0 for k in range(1, n + 1))

    @classmethod
    def indicator(cls, n, indices):
        chosen = set(indices)
        return cls(1 if k in chosen else 0 for k in range(1, n + 1))

    @property
    def n(self):
        return len(self)

    @property
    def norm(self):
        return sum(self)

    @property
    def support(self):
        return tuple(i + 1 for i, c in enumerate(self) if c)

    def is_squarefree(self):
        return all(c <= 1 for c in self)

    def plus(self, other):
        return ExponentVector(a + b for a, b in zip(self, other))

    def minus(self, other):
        return ExponentVector(a - b for a, b in zip(self, other))

    def scaled(self, k):
        return ExponentVector(k * a for a in self)

    def leq(self, other):
        return all(a <= b for a, b in zip(self, other))

    def append_zero(self):
        return ExponentVector(tuple(self) + (0,))

    def rotated(self, shift=1):
        """循环右移 shift 位 (Z_n 作用)"""
        if not self:
            return self
        shift %= len(self)
        return ExponentVector(self[-shift:] + self[:-shift]) if shift else self

    def __repr__(self):
        return f"ExponentVector({list(self)})"


# ==================== 单变量截断级数 ====================
class UniSeries:
    """Σ_{k=0..D} c_k z^k, 系数为任意精度整数"""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = [int(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("截断阶数必须非负")
        if len(coeffs) > order + 1:
            raise ValueError(f"系数个数 {len(coeffs)} 超过截断阶数 {order}")
        coeffs += [0] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def truncate(cls, coeffs, order):
        return cls(list(coeffs)[: order + 1], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __mul__(self, other):
        return uni_mul(self, other)

    def __repr__(self):
        terms = " + ".join(f"{c}z^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"UniSeries({terms or '0'}; D={self.order})"


def _require_same_order(a, b):
    if a.order != b.order:
        raise TruncationMismatchError(f"截断阶数不一致: {a.order} vs {b.order}")


def uni_mul(a, b):
    """截断到 D 的 Cauchy 乘积"""
    _require_same_order(a, b)
    D = a.order
    out = [0] * (D + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(D + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return UniSeries(out, D)


def uni_add(a, b):
    _require_same_order(a, b)
    return UniSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)


def uni_neg_var(a):
    """代换 z -> -z"""
    return UniSeries([c if k % 2 == 0 else -c for k, c in enumerate(a.coeffs)], a.order)


def uni_inv(a):
    """常数项为 ±1 时的乘法逆元"""
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise ValueError(f"常数项 {a0} 不是单位, 无法求逆")
    D = a.order
    b = [0] * (D + 1)
    b[0] = a0
    for k in range(1, D + 1):
        acc = 0
        for j in range(1, k + 1):
            if a.coeffs[j]:
                acc += a.coeffs[j] * b[k - j]
        b[k] = -a0 * acc
    return UniSeries(b, D)


def binomial_factor(i, e, sign, order):
    """截断的 (1 + sign·z^i)^e, e 为任意整数 (ε 可达 10^10, 不能逐次相乘)"""
    if i < 1:
        raise ValueError("i 必须 >= 1")
    coeffs = [0] * (order + 1)
    for k in range(order // i + 1):
        coeffs[i * k] = generalized_binomial(e, k) * sign ** k
    return UniSeries(coeffs, order)


def _mul_sparse_factor_inplace(coeffs, i, e, sign):
    """coeffs <- coeffs · (1 + sign·z^i)^e, 从高次往低次原地更新"""
    D = len(coeffs) - 1
    factor = [(i * k, generalized_binomial(e, k) * sign ** k) for k in range(1, D // i + 1)]
    factor = [(shift, c) for shift, c in factor if c]
    for m in range(D, 0, -1):
        acc = coeffs[m]
        for shift, c in factor:
            if shift > m:
                break
            acc += c * coeffs[m - shift]
        coeffs[m] = acc


def uni_from_product(graded, order):
    """由偏差数重建 Π_{i奇}(1+z^i)^{ε_i} / Π_{i偶}(1-z^i)^{ε_i}"""
    coeffs = [1] + [0] * order
    for i in sorted(graded):
        e = graded[i]
        if e == 0 or i > order:
            continue
        if i % 2 == 1:
            _mul_sparse_factor_inplace(coeffs, i, e, 1)
        else:
            _mul_sparse_factor_inplace(coeffs, i, -e, -1)
    return UniSeries(coeffs, order)


# ==================== 偏差表 ====================
@dataclass
class DeviationTable:
    """ε_s 与 ε_v; 负值说明剥离出错, 直接拒绝"""

    graded: dict = field(default_factory=dict)
    multigraded: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for key, value in list(self.graded.items()) + list(self.multigraded.items()):
            if value < 0:
                raise DeviationExtractionError(f"not a deviation sequence: ε at {key} = {value}")
        self.graded = {int(s): int(e) for s, e in sorted(self.graded.items())}
        self.multigraded = {
            ExponentVector(v): int(e) for v, e in sorted(self.multigraded.items())
        }

    def epsilon(self, s):
        return self.graded.get(s, 0)

    def epsilon_v(self, v):
        return self.multigraded.get(tuple(v), 0)

    def graded_list(self, smax=None):
        smax = smax if smax is not None else max(self.graded, default=0)
        return [self.graded.get(s, 0) for s in range(1, smax + 1)]

    def norm_sums(self):
        """Σ_{‖v‖=s} ε_v"""
        sums = {}
        for v, e in self.multigraded.items():
            sums[v.norm] = sums.get(v.norm, 0) + e
        return dict(sorted(sums.items()))

    def nonzero_multidegrees(self, norm=None):
        return [v for v, e in self.multigraded.items() if e and (norm is None or v.norm == norm)]

    def to_frame(self, multigraded=False):
        if multigraded:
            rows = [{"v": list(v), "epsilon": e} for v, e in self.multigraded.items() if e]
            return pd.DataFrame(rows, columns=["v", "epsilon"])
        rows = [{"s": s, "epsilon": e} for s, e in self.graded.items()]
        return pd.DataFrame(rows, columns=["s", "epsilon"])


def extract_deviations_uni(P, metadata=None):
    """逐次剥离: 第 i 步的 ε_i 就是 P 除以已构造部分乘积后 z^i 的系数"""
    if P.coeffs[0] != 1:
        raise DeviationExtractionError(f"Poincaré 级数常数项必须为 1, 实际为 {P.coeffs[0]}")
    residual = list(P.coeffs)
    graded = {}
    for i in range(1, P.order + 1):
        e = residual[i]
        if e < 0:
            raise DeviationExtractionError(f"not a deviation sequence: ε_{i} = {e}")
        graded[i] = e
        if e == 0:
            continue
        if i % 2 == 1:
            # 除以 (1+z^i)^e
            _mul_sparse_factor_inplace(residual, i, -e, 1)
        else:
            # 除以 (1-z^i)^{-e}
            _mul_sparse_factor_inplace(residual, i, e, -1)
    meta = {"truncation": P.order}
    meta.update(metadata or {})
    return DeviationTable(graded=graded, metadata=meta)


# ==================== 多变量截断级数 ====================
class MultiSeries:
    """Σ c_v ξ^v, 截断条件: v <= cap (逐分量) 且 ‖v‖ <= degree_bound"""

    __slots__ = ("terms", "cap", "degree_bound")

    def __init__(self, terms, cap, degree_bound):
        self.cap = ExponentVector(cap)
        self.degree_bound = int(degree_bound)
        if self.degree_bound < 0:
            raise ValueError("degree_bound 必须非负")
        kept = {}
        for v, c in terms.items():
            v = ExponentVector(v)
            if len(v) != len(self.cap):
                raise ValueError(f"指数向量 {v} 的长度与 cap {self.cap} 不一致")
            c = int(c)
            if c and self.admits(v):
                kept[v] = kept.get(v, 0) + c
        self.terms = {v: c for v, c in sorted(kept.items()) if c}

    @classmethod
    def one(cls, cap, degree_bound):
        return cls({ExponentVector.zero(len(cap)): 1}, cap, degree_bound)

    @property
    def n(self):
        return len(self.cap)

    def admits(self, v):
        return sum(v) <= self.degree_bound and all(a <= b for a, b in zip(v, self.cap))

    def coefficient(self, v):
        return self.terms.get(tuple(v), 0)

    def items(self):
        return self.terms.items()

    def same_truncation(self, other):
        return self.cap == other.cap and self.degree_bound == other.degree_bound

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.same_truncation(other) and self.terms == other.terms

    def __mul__(self, other):
        return multi_mul(self, other)

    def __repr__(self):
        return f"MultiSeries({len(self.terms)} terms; cap={list(self.cap)}, bound={self.degree_bound})"


def multi_mul(a, b):
    if not a.same_truncation(b):
        raise TruncationMismatchError(
            f"截断不一致: cap {list(a.cap)}/{list(b.cap)}, bound {a.degree_bound}/{b.degree_bound}"
        )
    out = {}
    for u, cu in a.terms.items():
        for w, cw in b.terms.items():
            t = u.plus(w)
            if a.admits(t):
                out[t] = out.get(t, 0) + cu * cw
    return MultiSeries(out, a.cap, a.degree_bound)


def specialize(series):
    """x_i <- t, 得到单变量级数 (截断到 degree_bound)"""
    coeffs = [0] * (series.degree_bound + 1)
    for v, c in series.terms.items():
        coeffs[v.norm] += c
    return UniSeries(coeffs, series.degree_bound)


class _NormLevels:
    """按 1-范数分层存放的可变稀疏级数, 仅在剥离过程内部使用"""

    def __init__(self, terms, cap, degree_bound):
        self.cap = cap
        self.bound = degree_bound
        self.levels = [dict() for _ in range(degree_bound + 1)]
        for v, c in terms.items():
            self.levels[v.norm][v] = c

    def get(self, v):
        return self.levels[v.norm].get(v, 0) if v.norm <= self.bound else 0

    def keys_at(self, d):
        return self.levels[d].keys()

    def mul_one_minus_power(self, v, e):
        """原地乘以 (1 - ξ^v)^e, e >= 0"""
        dv = v.norm
        cap = self.cap
        coeffs = []
        for k in range(1, e + 1):
            if k * dv > self.bound:
                break
            coeffs.append((k, (-1) ** k * comb(e, k)))
        if not coeffs:
            return
        for dw in range(self.bound - dv, -1, -1):
            source = self.levels[dw]
            if not source:
                continue
            for w, c in list(source.items()):
                for k, ck in coeffs:
                    tn = dw + k * dv
                    if tn > self.bound:
                        break
                    t = tuple(a + k * b for a, b in zip(w, v))
                    if any(a > b for a, b in zip(t, cap)):
                        break
                    t = ExponentVector(t)
                    level = self.levels[tn]
                    value = level.get(t, 0) + c * ck
                    if value:
                        level[t] = value
                    else:
                        level.pop(t, None)

    def as_series(self):
        terms = {}
        for level in self.levels:
            terms.update(level)
        return MultiSeries(terms, self.cap, self.bound)


def extract_deviations_multi(hs, metadata=None):
    """
    求唯一的非负 ε_v, 使得
        Π_{‖v‖奇}(1-ξ^v)^{ε_v} · HS = Π_{‖v‖偶}(1-ξ^v)^{ε_v}   (截断意义下)
    按 ‖v‖ 递增、同范数内按字典序确定 ε_v; 同范数的其他因子不影响 ξ^v 的系数
    """
    n = hs.n
    zero = ExponentVector.zero(n)
    if hs.coefficient(zero) != 1:
        raise DeviationExtractionError("Hilbert 级数常数项必须为 1")
    left = _NormLevels(hs.terms, hs.cap, hs.degree_bound)
    right = _NormLevels({zero: 1}, hs.cap, hs.degree_bound)
    multigraded = {}
    for d in range(1, hs.degree_bound + 1):
        candidates = sorted(set(left.keys_at(d)) | set(right.keys_at(d)))
        for v in candidates:
            diff = left.get(v) - right.get(v)
            value = diff if d % 2 == 1 else -diff
            if value < 0:
                raise DeviationExtractionError(f"not a deviation sequence: ε at {list(v)} = {value}")
            if value == 0:
                continue
            multigraded[v] = value
            if d % 2 == 1:
                left.mul_one_minus_power(v, value)
            else:
                right.mul_one_minus_power(v, value)
    # 残差检查
    for d in range(hs.degree_bound + 1):
        for v in set(left.keys_at(d)) | set(right.keys_at(d)):
            if left.get(v) != right.get(v):
                raise DeviationExtractionError(f"乘积展开残差非零: {list(v)}")
    meta = {"cap": list(hs.cap), "degree_bound": hs.degree_bound, "n": n}
    meta.update(metadata or {})
    return DeviationTable(multigraded=multigraded, metadata=meta)
