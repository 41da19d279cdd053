"""
一次运行的配置: 类级常量给出默认上限, 实例字段对应命令行参数
"""

from exact_linalg import is_prime
from ideals import CYCLE, PATH, cycle_graph, path_graph, read_edge_list

OUTPUT_FORMATS = ("json", "csv", "table")
ENGINES = ("jacques", "koszul", "model")
COMMANDS = ("deviations", "betti", "homology", "generators", "verify")


# ==================== 配置参数 ====================
class RunConfig:
    """运行配置"""

    # 验证规模
    QUICK_MAX_N = 6  # --quick: 路径/圈的最大顶点数
    FULL_MAX_N = 8   # --full
    QUICK_TABLE_SMAX = 12
    TABLE_SMAX = 25  # (γ_s, α_s) 表的长度
    LINEARITY_MAX_N = 12
    DEVIATION_DEGREE_BOUND = 8  # 多重分次检查的范数上界 max(n, 8)

    # 输出
    TABLE_COLWIDTH = 48  # table 格式单元格的最大宽度

    # 资源上限
    MAX_STRAND_DIM = 20000  # 单个 Koszul strand 的总维数
    MAX_VERTICES = 14       # homology 子命令接受的最大顶点数

    # 随机检查
    RANDOM_IDEALS = 20
    RANDOM_IDEAL_VARS = 5
    SEED = 20240601

    def __init__(self, command="verify", kind=None, n=None, edges_file=None, smax=None,
                 multigraded=False, cap=None, degree_bound=None, gamma_alpha=None,
                 engine="koszul", characteristic=0, output_format="table", out=None,
                 jobs=1, quiet=False, full=False):
        self.command = command
        self.kind = kind
        self.n = n
        self.edges_file = edges_file
        self.smax = smax
        self.multigraded = multigraded
        self.cap = tuple(cap) if cap is not None else None
        self.degree_bound = degree_bound
        self.gamma_alpha = gamma_alpha
        self.engine = engine
        self.characteristic = characteristic
        self.output_format = output_format
        self.out = out
        self.jobs = jobs
        self.quiet = quiet
        self.full = full

    @property
    def max_n(self):
        return self.FULL_MAX_N if self.full else self.QUICK_MAX_N

    @property
    def table_smax(self):
        return self.TABLE_SMAX if self.full else self.QUICK_TABLE_SMAX

    @property
    def has_graph(self):
        return self.kind is not None or self.edges_file is not None

    def validate(self):
        """不合法的组合抛出 ValueError"""
        if self.command not in COMMANDS:
            raise ValueError(f"未知的子命令: {self.command}")
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"特征必须为 0 或素数: {self.characteristic}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"输出格式必须是 {OUTPUT_FORMATS} 之一: {self.output_format}")
        if self.engine not in ENGINES:
            raise ValueError(f"引擎必须是 {ENGINES} 之一: {self.engine}")
        if self.jobs < 1:
            raise ValueError(f"--jobs 必须 >= 1: {self.jobs}")
        for name in ("smax", "degree_bound", "gamma_alpha"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"--{name.replace('_', '-')} 必须为正: {value}")
        if self.kind is not None:
            if self.kind not in (PATH, CYCLE):
                raise ValueError(f"未知的图类型: {self.kind}")
            if self.n is None or self.n < (2 if self.kind == PATH else 3):
                raise ValueError(f"{self.kind} 的顶点数不合法: {self.n}")
        if self.cap is not None:
            if any(c < 0 for c in self.cap):
                raise ValueError(f"--cap 的分量不能为负: {list(self.cap)}")
            if self.n is not None and len(self.cap) != self.n:
                raise ValueError(f"--cap 长度 {len(self.cap)} 与 n={self.n} 不符")
        if self.command in ("betti", "generators") and self.kind is None:
            raise ValueError(f"{self.command} 需要 --path 或 --cycle")
        if self.command == "homology" and not self.has_graph:
            raise ValueError("homology 需要 --path / --cycle / --edges 之一")
        if self.command == "homology" and self.engine != "koszul" and self.kind is None:
            raise ValueError(f"引擎 {self.engine} 只支持 path / cycle")
        if self.command == "deviations" and self.gamma_alpha is None:
            if not self.has_graph:
                raise ValueError("deviations 需要 --path / --cycle / --edges, 或 --gamma-alpha")
            if not self.multigraded and self.smax is None:
                raise ValueError("分次偏差需要 --smax")
        return self

    def graph(self):
        """载入图; --edges 的顶点数在读文件后才知道, cap 长度在这里核对"""
        if self.kind == PATH:
            g = path_graph(self.n)
        elif self.kind == CYCLE:
            g = cycle_graph(self.n)
        elif self.edges_file is not None:
            g = read_edge_list(self.edges_file)
        else:
            raise ValueError("没有指定图")
        if self.cap is not None and len(self.cap) != g.n:
            raise ValueError(f"--cap 长度 {len(self.cap)} 与顶点数 {g.n} 不符")
        return g

    def print_config(self, reporter):
        """打印配置信息"""
        reporter.banner(f"deviant {self.command}")
        pairs = [("子命令", self.command)]
        if self.kind is not None:
            pairs.append(("图", f"{self.kind} n={self.n}"))
        elif self.edges_file is not None:
            pairs.append(("边表", self.edges_file))
        pairs += [
            ("特征", self.characteristic or "0 (QQ)"),
            ("输出格式", self.output_format),
            ("并行数", self.jobs),
        ]
        if self.command == "verify":
            pairs.append(("规模", f"n <= {self.max_n}, s <= {self.table_smax}"))
        reporter.keyvalues(pairs)

    @classmethod
    def from_args(cls, args):
        """argparse 命名空间 -> RunConfig"""
        kind, n = None, None
        if getattr(args, "path", None) is not None:
            kind, n = PATH, args.path
        elif getattr(args, "cycle", None) is not None:
            kind, n = CYCLE, args.cycle
        return cls(
            command=args.command,
            kind=kind,
            n=n,
            edges_file=getattr(args, "edges", None),
            smax=getattr(args, "smax", None),
            multigraded=getattr(args, "multigraded", False),
            cap=getattr(args, "cap", None),
            degree_bound=getattr(args, "degree_bound", None),
            gamma_alpha=getattr(args, "gamma_alpha", None),
            engine=getattr(args, "engine", "koszul"),
            characteristic=args.char,
            output_format=args.format,
            out=args.out,
            jobs=args.jobs,
            quiet=args.quiet,
            full=getattr(args, "full", False),
        )
