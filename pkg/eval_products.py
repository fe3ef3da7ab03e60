import sys
import time
import argparse

import pandas as pd
from tqdm import tqdm

from model.group_kdef import IntegersZ, NonOrientable, Orientable, Product, expr_to_text, qcd
from pipeline.criteria import (
    all_products,
    atiyah_segal_compare,
    consistency_suite,
    recurrence_check,
)
from pipeline.report_utils import load_config, log, render_frame, setup_log


FACTORS = [IntegersZ(), Orientable(1), Orientable(2), NonOrientable(2), NonOrientable(3)]


def evaluate(max_factors: int, padding: int) -> pd.DataFrame:
    rows = []
    products = list(all_products(FACTORS, max_factors))
    for atoms in tqdm(products, desc="products"):
        e = Product(atoms)
        compare = atiyah_segal_compare(e, padding)
        suite = consistency_suite(e, padding)
        recurrence = recurrence_check(e)
        rows.append(
            {
                "expression": expr_to_text(e),
                "qcd": qcd(e),
                "compare": compare.passed,
                "check": suite.passed,
                "recurrence": recurrence.passed,
                "orders": recurrence.orders_checked,
                "failures": ",".join(suite.failures()),
            }
        )
    return pd.DataFrame(rows)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(
        description="run compare, check and the recurrence check over products of surfaces"
    )
    parser.add_argument(
        "-c", "--config_path", type=str, default=None, help="path to the YAML config"
    )
    parser.add_argument("--max_factors", type=int, default=3, help="largest number of factors")
    args = parser.parse_args()

    hyp = load_config(args.config_path)
    setup_log(hyp)

    log(f"evaluating all products of at most {args.max_factors} factors")
    start = time.time()
    frame = evaluate(args.max_factors, hyp["degree_padding"])
    log(f"{len(frame)} products in {time.time() - start:.2f}s")

    print(render_frame(frame))
    failed = frame[~(frame["compare"] & frame["check"] & frame["recurrence"])]
    if len(failed) > 0:
        log(f"{len(failed)} products failed")
        sys.exit(4)
    log("all products passed")
