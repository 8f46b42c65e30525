"""
Subclosure - Bench Command Mixin
bench subcommand for SubclosureCli: closure sizes per family member as a CSV table
"""

import logging
import sys
import time
from typing import Any, Dict, List

import pandas as pd

from src.cli.common import EXIT_OK
from src.core.automata import determinize, minimize
from src.core.closure import build_closure_nfa, naive_state_count, state_bound
from src.core.generators import gen_blowup, gen_lk, gen_pow2
from src.core.grammar_ops import size
from src.core.qnf import as_simple_qnf, growth_ratio, to_simple_qnf
from src.models.errors import BudgetExceededError

logger = logging.getLogger(__name__)

COLUMNS = ["n", "grammar_size", "qnf_nonterminals", "qnf_ratio", "shared_states", "state_bound",
           "naive_states", "min_dfa_states", "seconds", "status"]

FAMILY_START = {"pow2": 0, "lk": 1, "blowup": 0}

# determinizing the lk closures is only feasible for small n
LK_DFA_MAX_N = 2


class BenchCommandMixin:
    """Mixin providing the size benchmark"""

    def add_bench_parser(self, subparsers):
        bench = subparsers.add_parser("bench", help="closure sizes for a grammar family")
        bench.add_argument("family", choices=sorted(FAMILY_START))
        bench.add_argument("n_max", type=int)
        bench.add_argument("--csv", metavar="PATH", help="write the table to PATH instead of stdout")
        bench.set_defaults(handler=self.cmd_bench)

    def bench_row(self, family: str, n: int) -> Dict[str, Any]:
        started = time.perf_counter()
        grammar = {"pow2": gen_pow2, "lk": gen_lk, "blowup": gen_blowup}[family](n)
        qnf = as_simple_qnf(grammar) if family == "blowup" else to_simple_qnf(grammar)
        row: Dict[str, Any] = {
            "n": n,
            "grammar_size": size(grammar),
            "qnf_nonterminals": qnf.nonterminal_count,
            "qnf_ratio": round(growth_ratio(grammar, qnf), 3),
            "shared_states": None,
            "state_bound": state_bound(qnf.nonterminal_count),
            "naive_states": naive_state_count(qnf) if family == "blowup" else None,
            "min_dfa_states": None,
            "status": "ok",
        }
        try:
            nfa = build_closure_nfa(qnf)
            row["shared_states"] = nfa.state_count
            if family == "lk" and n <= LK_DFA_MAX_N:
                row["min_dfa_states"] = minimize(determinize(nfa)).state_count
        except BudgetExceededError as e:
            logger.warning("%s n=%d: %s", family, n, e)
            row["status"] = "budget"
        row["seconds"] = round(time.perf_counter() - started, 4)
        return row

    def cmd_bench(self, args) -> int:
        rows: List[Dict[str, Any]] = [self.bench_row(args.family, n)
                                      for n in range(FAMILY_START[args.family], args.n_max + 1)]
        df = pd.DataFrame(rows, columns=COLUMNS).astype(
            {"shared_states": "Int64", "naive_states": "Int64", "min_dfa_states": "Int64"})
        if args.csv:
            df.to_csv(args.csv, index=False)
        else:
            sys.stdout.write(df.to_csv(index=False))
        if not df.empty:
            print(f"max qnf_ratio: {df['qnf_ratio'].max()}", file=sys.stderr)
        return EXIT_OK
