import os
import argparse

from data.matrix_io import save_matrix_pair
from model.torus_moduli import commuting_pair, random_joint_angles
from pipeline.report_utils import log, setup_seed


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="write a seeded commuting unitary pair as JSON")
    parser.add_argument("-o", "--output", type=str, required=True, help="output JSON path")
    parser.add_argument("-n", type=int, default=4, help="matrix size")
    parser.add_argument("--seed", type=int, default=42, help="random seed")
    parser.add_argument(
        "--repeat",
        type=int,
        default=None,
        help="number of coinciding eigenvalues of A, separated by B",
    )
    args = parser.parse_args()

    if args.n < 1:
        raise ValueError(f"matrix size must be positive, {args.n} were given")

    rng = setup_seed(args.seed)
    alpha, beta = random_joint_angles(args.n, rng, args.repeat)
    a, b, _ = commuting_pair(alpha, beta, rng)

    out_dir = os.path.dirname(args.output)
    if out_dir != "" and not os.path.exists(out_dir):
        os.makedirs(out_dir)
    save_matrix_pair(args.output, a, b, args.seed)
    log(f"commuting pair of size {args.n} written to {args.output}")
