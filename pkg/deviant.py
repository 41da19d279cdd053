"""
deviant: 路径与圈边理想的偏差数、Betti 表与 Koszul 同调代数

用法示例:
    python deviant.py deviations --path 3 --smax 4
    python deviant.py deviations --gamma-alpha 25
    python deviant.py betti --cycle 6
    python deviant.py homology --edges graph.txt --engine koszul
    python deviant.py generators --cycle 7
    python deviant.py verify --quick
"""

import argparse
import json
import sys

import pandas as pd

import dgmodel
import koszul
from betti import betti_table
from deviations import LinearityError, deviations_graded, deviations_multigraded, gamma_alpha
from ideals import edge_ideal, multidegree_cap
from koszul import ResourceBoundError
from reporting import Reporter
from run_config import ENGINES, OUTPUT_FORMATS, RunConfig
from series import DeviationExtractionError
from verification import VerificationSuite

EXIT_OK = 0
EXIT_THEOREM = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# ==================== 输出 ====================
def _cap(text):
    return [int(c) for c in text.split(",") if c.strip()]


def emit(frame, cfg, index=False):
    """按 --format 序列化到 stdout 或 --out"""
    if cfg.output_format == "json":
        text = json.dumps(json.loads(frame.to_json(orient="records")), indent=2) + "\n"
    elif cfg.output_format == "csv":
        text = frame.to_csv(index=index)
    elif frame.empty:
        text = "(empty)\n"
    else:
        text = frame.to_string(index=index, justify="left", max_colwidth=cfg.TABLE_COLWIDTH) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _betti_frame(table, cfg):
    if cfg.output_format == "table":
        return table.to_frame(), True
    return pd.DataFrame(table.to_records(), columns=["i", "v", "beta"]), False


# ==================== 子命令 ====================
def cmd_deviations(cfg, reporter):
    if cfg.gamma_alpha is not None:
        pairs = gamma_alpha(cfg.gamma_alpha)
        reporter.line(f"γ_s, α_s 共 {pairs.smax} 项")
        emit(pairs.to_frame(), cfg)
        return EXIT_OK
    g = cfg.graph()
    if cfg.multigraded:
        bound = cfg.degree_bound or cfg.smax
        table = deviations_multigraded(g, cfg.cap, bound)
        reporter.line(f"非零多重次数偏差: {len(table.nonzero_multidegrees())} 个")
        emit(table.to_frame(multigraded=True), cfg)
    else:
        table = deviations_graded(g, cfg.smax)
        reporter.line(f"ε_1..ε_{cfg.smax}: {table.graded_list()}")
        emit(table.to_frame(), cfg)
    return EXIT_OK


def cmd_betti(cfg, reporter):
    table = betti_table(cfg.graph())
    reporter.line(f"非零 Betti 数: {len(table.entries)} 个多重次数")
    frame, index = _betti_frame(table, cfg)
    emit(frame, cfg, index=index)
    return EXIT_OK


def cmd_homology(cfg, reporter):
    g = cfg.graph()
    if g.n > cfg.MAX_VERTICES:
        raise ResourceBoundError(f"顶点数 {g.n} 超过上限 {cfg.MAX_VERTICES}")
    if cfg.engine == "jacques":
        table = betti_table(g)
    elif cfg.engine == "model":
        table = dgmodel.model_homology(g.kind, g.n, cfg.cap, cfg.characteristic)
    else:
        ideal = edge_ideal(g)
        cap = cfg.cap if cfg.cap is not None else multidegree_cap(ideal)
        table, _ = koszul.homology(ideal, cap, cfg.characteristic, cfg.MAX_STRAND_DIM)
    reporter.line(f"引擎: {cfg.engine}, 非零项 {len(table.entries)}")
    frame, index = _betti_frame(table, cfg)
    emit(frame, cfg, index=index)
    return EXIT_OK


def cmd_generators(cfg, reporter):
    g = cfg.graph()
    engine = koszul.KoszulComplex(edge_ideal(g), cfg.characteristic, cfg.MAX_STRAND_DIM)
    found = sorted(engine.minimal_generator_bidegrees((1,) * g.n))
    reporter.line(f"极小生成元双次数: {found}")
    emit(pd.DataFrame(found, columns=["i", "j"]), cfg)
    return EXIT_OK


def cmd_verify(cfg, reporter):
    suite = VerificationSuite(cfg, reporter)
    suite.run()
    emit(suite.summary(), cfg)
    code = suite.exit_code()
    reporter.banner("✅ 全部定理检查通过" if code == EXIT_OK else "❌ 存在未通过的定理检查")
    return code


COMMANDS = {
    "deviations": cmd_deviations,
    "betti": cmd_betti,
    "homology": cmd_homology,
    "generators": cmd_generators,
    "verify": cmd_verify,
}


# ==================== 参数解析 ====================
def build_parser():
    parser = argparse.ArgumentParser(
        prog="deviant",
        description="路径/圈边理想的偏差数、Betti 表与 Koszul 同调代数",
    )
    common = argparse.ArgumentParser(add_help=False)
    graph = common.add_mutually_exclusive_group()
    graph.add_argument("--path", type=int, metavar="N", help="路径 P_N")
    graph.add_argument("--cycle", type=int, metavar="N", help="圈 C_N")
    graph.add_argument("--edges", metavar="FILE", help="边表文件")
    common.add_argument("--char", type=int, default=0, help="域的特征 (0 或素数)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="table", help="输出格式")
    common.add_argument("--out", help="输出文件, 默认 stdout")
    common.add_argument("--jobs", type=int, default=1, help="并行进程数")
    common.add_argument("--quiet", action="store_true", help="不打印横幅")

    sub = parser.add_subparsers(dest="command", required=True)
    dev = sub.add_parser("deviations", parents=[common], help="偏差数")
    dev.add_argument("--smax", type=int, help="最高同调次数")
    dev.add_argument("--multigraded", action="store_true", help="多重分次偏差")
    dev.add_argument("--cap", type=_cap, help="逐分量上界, 如 1,1,1")
    dev.add_argument("--degree-bound", type=int, help="总次数上界")
    dev.add_argument("--gamma-alpha", type=int, metavar="S", help="输出 γ_s, α_s, s <= S")

    sub.add_parser("betti", parents=[common], help="闭式 Betti 表")
    hom = sub.add_parser("homology", parents=[common], help="Koszul 同调维数")
    hom.add_argument("--engine", choices=ENGINES, default="koszul", help="计算引擎")
    hom.add_argument("--cap", type=_cap, help="多重次数上界")
    sub.add_parser("generators", parents=[common], help="Koszul 同调代数的极小生成元双次数")

    ver = sub.add_parser("verify", parents=[common], help="运行验收检查")
    scale = ver.add_mutually_exclusive_group()
    scale.add_argument("--quick", dest="full", action="store_false", help=f"n <= {RunConfig.QUICK_MAX_N}")
    scale.add_argument("--full", dest="full", action="store_true", help=f"n <= {RunConfig.FULL_MAX_N}")
    ver.set_defaults(full=False)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    reporter = Reporter(quiet=args.quiet)
    try:
        cfg = RunConfig.from_args(args).validate()
        if cfg.command != "verify":
            cfg.print_config(reporter)
        return COMMANDS[cfg.command](cfg, reporter)
    except ResourceBoundError as exc:
        print(f"deviant: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DeviationExtractionError, LinearityError) as exc:
        print(f"deviant: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (ValueError, OSError) as exc:
        print(f"deviant: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
