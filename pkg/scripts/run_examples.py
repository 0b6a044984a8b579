"""sw^norm for every class of the bundled examples, with the counting-function check."""

import argparse
from dataclasses import dataclass

from plumbsw.lifts import canonical_lift
from plumbsw.manifold import Plumbed
from plumbsw.polyparts import compute_sw, oracle_sw_counting
from plumbsw.samples import EXAMPLES, load_example


@dataclass
class Config:
    examples: tuple = EXAMPLES
    strategy: str = 'small'
    oracle: bool = True


def main(cfg: Config) -> None:
    for name in cfg.examples:
        P = Plumbed.from_graph(load_example(name))
        print(f"{name}: |H| = {P.dg.order}")
        for h in P.dg.elements():
            res = compute_sw(P, canonical_lift(P, h), cfg.strategy)
            line = f"  {h}: sw_norm {res.sw_norm}, {len(res.P_h)} terms"
            if cfg.oracle:
                line += f", oracle {oracle_sw_counting(P, h)}"
            print(line)


if __name__ == '__main__':
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('--strategy', default='small', choices=('small', 'proof'))
    ap.add_argument('--no-oracle', action='store_true')
    a = ap.parse_args()
    main(Config(strategy=a.strategy, oracle=not a.no_oracle))
