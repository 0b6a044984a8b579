"""Semigroups of Seifert spheres and of plane curves with one or two pairs."""

import argparse
from dataclasses import dataclass

from plumbsw.semigroups import curve_semigroup, seifert_semigroup


@dataclass
class Config:
    triples: tuple = ((2, 3, 5), (2, 3, 7), (2, 5, 7), (3, 4, 5))
    pairs: tuple = ((2, 3), (2, 5), (3, 4), (3, 5), (4, 5))


def main(cfg: Config) -> None:
    for t in cfg.triples:
        S = seifert_semigroup(t)
        print(f"Sigma{t}: <{', '.join(map(str, S.minimal_generators()))}>, "
              f"genus {S.genus}, frobenius {S.frobenius}")
    for p in cfg.pairs:
        c = curve_semigroup(pair=p)
        print(f"pair {p}: delta {c.delta}, Alexander {c.alexander}")


if __name__ == '__main__':
    argparse.ArgumentParser(description=__doc__).parse_args()
    main(Config())
