"""
精确线性代数: 有理数域 Q 与素域 GF(p)
矩阵使用 numpy object 数组存放 Python 整数 / Fraction, 不经过浮点
"""

from fractions import Fraction
from math import gcd

import numpy as np


def is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class ExactField:
    """characteristic = 0 表示 Q, 否则为 GF(p)"""

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"特征必须为 0 或素数: {characteristic}")
        self.characteristic = characteristic

    @property
    def name(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def element(self, x):
        if self.characteristic == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.characteristic)) % self.characteristic
        return int(x) % self.characteristic

    def inverse(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("零元没有逆元")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def is_zero(self, x):
        return x == 0 if self.characteristic == 0 else int(x) % self.characteristic == 0

    def vector(self, values):
        return [self.element(x) for x in values]

    def __eq__(self, other):
        return isinstance(other, ExactField) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(self.characteristic)

    def __repr__(self):
        return f"ExactField({self.name})"


def _rows(matrix):
    return [list(row) for row in np.asarray(matrix, dtype=object).tolist()] if len(matrix) else []


def zero_matrix(rows, cols):
    return np.zeros((rows, cols), dtype=object)


def _primitive(row):
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


def integer_rank(matrix):
    """无分数消元: 行相减后除以内容 gcd, 全程整数"""
    A = [_primitive([int(x) for x in row]) for row in _rows(matrix)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][c]
        for r in range(rank + 1, len(A)):
            f = A[r][c]
            if f:
                A[r] = _primitive([p * a - f * b for a, b in zip(A[r], A[rank])])
        rank += 1
        if rank == len(A):
            break
    return rank


def _clear_denominators(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    return [int(Fraction(x) * den) for x in row]


def rank(matrix, field):
    if field.characteristic == 0:
        return integer_rank([_clear_denominators(row) for row in _rows(matrix)])
    _, pivots = rref(matrix, field)
    return len(pivots)


def rref(matrix, field):
    """约化行阶梯形, 返回 (行列表, 主元列)"""
    A = [field.vector(row) for row in _rows(matrix)]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(A)) if not field.is_zero(A[k][c])), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = field.inverse(A[r][c])
        A[r] = [field.element(x * inv) for x in A[r]]
        for k in range(len(A)):
            if k != r and not field.is_zero(A[k][c]):
                f = A[k][c]
                A[k] = [field.element(a - f * b) for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(matrix, ncols, field):
    """{x : M x = 0} 的一组基; 每个自由列对应一个基向量"""
    rows, pivots = rref(matrix, field) if len(matrix) else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.element(0)] * ncols
        x[f] = field.element(1)
        for row, pc in zip(rows, pivots):
            x[pc] = field.element(-row[f])
        basis.append(x)
    return basis


def mat_vec(matrix, vector, field):
    out = []
    for row in _rows(matrix):
        acc = field.element(0)
        for a, b in zip(row, vector):
            if a:
                acc = acc + a * b
        out.append(field.element(acc))
    return out


def columns(matrix):
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2 or arr.shape[1] == 0:
        return []
    return [list(arr[:, j]) for j in range(arr.shape[1])]


def composes_to_zero(left, right):
    """left·right == 0; 内维为 0 时直接成立"""
    left = np.asarray(left, dtype=object)
    right = np.asarray(right, dtype=object)
    if 0 in left.shape or 0 in right.shape:
        return True
    return not np.any(left.dot(right) != 0)


# ==================== 增量子空间 ====================
class Subspace:
    """
    逐个加入向量的子空间, 保存半阶梯形行以及每行关于原始加入向量的组合系数
    express() 给出目标向量在已加入向量上的坐标
    """

    def __init__(self, dim, field):
        self.dim = dim
        self.field = field
        self._rows = []      # (pivot, vector, combo)
        self.basis = []      # 被接受的原始向量
        self.tags = []

    @property
    def dimension(self):
        return len(self._rows)

    def _reduce(self, vec):
        field = self.field
        residual = field.vector(vec)
        if len(residual) != self.dim:
            raise ValueError(f"向量长度 {len(residual)} 与空间维数 {self.dim} 不符")
        combo = {}
        for pivot, row, row_combo in self._rows:
            c = residual[pivot]
            if field.is_zero(c):
                continue
            residual = [field.element(a - c * b) for a, b in zip(residual, row)]
            for tag, coef in row_combo.items():
                combo[tag] = field.element(combo.get(tag, 0) + c * coef)
        return residual, combo

    def contains(self, vec):
        residual, _ = self._reduce(vec)
        return all(self.field.is_zero(x) for x in residual)

    def add(self, vec, tag=None):
        """线性无关时加入并返回 True"""
        field = self.field
        residual, combo = self._reduce(vec)
        pivot = next((k for k, x in enumerate(residual) if not field.is_zero(x)), None)
        if pivot is None:
            return False
        tag = len(self.basis) if tag is None else tag
        # residual = vec - Σ combo·(原始向量)
        row_combo = {t: field.element(-c) for t, c in combo.items() if not field.is_zero(c)}
        row_combo[tag] = field.element(1)
        inv = field.inverse(residual[pivot])
        row = [field.element(x * inv) for x in residual]
        row_combo = {t: field.element(c * inv) for t, c in row_combo.items()}
        self._rows.append((pivot, row, row_combo))
        self.basis.append(field.vector(vec))
        self.tags.append(tag)
        return True

    def express(self, vec):
        """vec 在已加入向量上的坐标 {tag: coef}; 不在子空间内时返回 None"""
        residual, combo = self._reduce(vec)
        if not all(self.field.is_zero(x) for x in residual):
            return None
        return {t: c for t, c in combo.items() if not self.field.is_zero(c)}
