#!/usr/bin/env python3
"""Render box-ball evolution blocks, infinite or periodic.

Examples:
    python scripts/render_evolution.py "554322......433..........6" --steps 8
    python scripts/render_evolution.py 222111211111 --periodic --l 2 --steps 6
"""

import argparse

from boxball.bbs import BBSState
from boxball.cli import render_evolution
from boxball.pbbs import PeriodicState, evolve_periodic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("state")
    ap.add_argument("--periodic", action="store_true")
    ap.add_argument("--l", default=None, help="carrier capacity (default: infinity)")
    ap.add_argument("--steps", type=int, default=8)
    args = ap.parse_args()
    l = None if args.l in (None, "inf") else int(args.l)

    if args.periodic:
        s = PeriodicState.parse(args.state)
        rows = [s.render()]
        for _ in range(args.steps):
            s = evolve_periodic(s, l)[0]
            rows.append(s.render())
    else:
        rows = render_evolution(BBSState.parse(args.state), l, args.steps)
    for t, row in enumerate(rows):
        print(f"t={t:<4}{row}")


if __name__ == "__main__":
    main()
