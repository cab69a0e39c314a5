#!/usr/bin/env python3
"""Regenerate the bundled language resource files under src/xlex/resources/.

Sources:
  - data/lm_positive.txt, data/lm_negative.txt (sample word lists, checked in)
  - a hand-curated list of common English words below
  - sklearn's English stopword list

The lemma table is derived with conservative suffix rules: an inflected form
maps to a base form only when the base form itself is present in the word
list, which keeps every lemma a fixed point of the mapping.
"""

import re
from pathlib import Path

from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

ROOT = Path(__file__).resolve().parent.parent
RES = ROOT / "src" / "xlex" / "resources"

COMMON_WORDS = """
company market stock share price profit revenue earnings growth quarter
year sales income cost debt loan bank investor trade economy financial
finance fund asset capital cash dividend rate interest percent billion
million report announce announced announces announcing result results
increase increased increases increasing decrease decreased decreases
decreasing rise rose rises rising fall fell falls falling drop dropped
drops dropping gain gained gains gaining lose loses losing lost loss
losses win wins winning winner winners won strong weak high low higher
lower highest lowest good bad better worse best worst positive negative
neutral outlook forecast guidance estimate estimates expect expected
expects expecting beat beats beating missed misses missing record
quarterly annual fiscal net gross margin margins operating operation
operations operate operates operated deal deals merger mergers acquire
acquired acquires acquiring acquisition acquisitions sell sells selling
sold buy buys buying bought agreement agreements contract contracts
product products service services customer customers client clients
business businesses industry industries sector sectors technology
energy power oil gas gold metal steel paper machinery engineering
airline crew flight temporary layoff layoffs staff employee employees
worker workers job jobs hire hired hiring fire fired firing cut cuts
cutting reduction reductions restructuring division divisions unit units
group groups board director directors executive executives chief officer
president management manager managers strategy strategic plan plans
planned planning project projects investment investments invest invested
investing improve improved improves improving improvement improvements
decline declined declines declining drop surge surged surges surging
jump jumped jumps jumping slump slumped slumps slumping rally rallied
rallies rallying recover recovered recovers recovering recovery upgrade
upgraded upgrades upgrading downgrade downgraded downgrades downgrading
target targets raised raise raises raising lowered lowers lowering
impact impacts impacted impacting effect effects affected affect affects
affecting risk risks risky uncertain uncertainty demand supply order
orders ordered ordering delivery deliveries deliver delivered delivering
launch launched launches launching expand expanded expands expanding
expansion open opened opens opening close closed closes closing closure
closures new old large small big major minor total average maximum
minimum value values worth period term short long global local domestic
international foreign world country countries state states nation
national government tax taxes regulation regulations regulator
regulatory legal lawsuit court fine fines penalty penalties approve
approved approves approving approval reject rejected rejects rejecting
rejection news headline headlines statement statements release released
releases releasing option options handset handsets mobile phone phones
percent profitability margin quarter quarters month months week weeks
day days time times today yesterday tomorrow early late flat steady
stable unstable volatile volatility trend trends momentum pressure
competitive competition competitor competitors advantage disadvantage
success successful successfully failure fail failed fails failing
growth growing grow grows grew slow slowed slows slowing fast faster
slower significant significantly substantial substantially moderate
moderately sharp sharply slight slightly undisclosed sum amount amounts
completed complete completes completing completion pending agreed agree
agrees agreeing technology technologies japanese finnish american
european asian chinese china japan europe america finland nokia apple
profit profits profitable unprofitable surpass surpasses surpassed
surpassing transparency tremendous tremendously unmatched unparalleled
unsurpassed upturn valuable versatile versatility vibrancy vibrant
worthy abet abide aboard abolition abroad writeoff writeoffs wrongful
wrongfully wrongly accomplish advance advantageous depth military
evasion defeat pose
""".split()


def harvest(path: Path) -> list[str]:
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    return words


def derive_lemmas(words: set[str]) -> dict[str, str]:
    lemmas = {}

    def try_map(form: str, base: str) -> None:
        if base != form and base in words and form not in lemmas:
            lemmas[form] = base

    for w in sorted(words):
        if not re.fullmatch(r"[a-z]+", w) or len(w) < 4:
            continue
        if w.endswith("ies"):
            try_map(w, w[:-3] + "y")
        if w.endswith("es"):
            try_map(w, w[:-2])
        if w.endswith("s") and not w.endswith("ss"):
            try_map(w, w[:-1])
        if w.endswith("ied"):
            try_map(w, w[:-3] + "y")
        if w.endswith("ed"):
            try_map(w, w[:-2])
            try_map(w, w[:-1])           # e.g. announced -> announce
            if len(w) > 4 and w[-3] == w[-4]:
                try_map(w, w[:-3])       # e.g. dropped -> drop
        if w.endswith("ing"):
            try_map(w, w[:-3])
            try_map(w, w[:-3] + "e")     # e.g. acquiring -> acquire
            if len(w) > 5 and w[-4] == w[-5]:
                try_map(w, w[:-4])       # e.g. cutting -> cut
        if w.endswith("ly"):
            try_map(w, w[:-2])

    # collapse chains so every lemma value is a fixed point
    changed = True
    while changed:
        changed = False
        for k, v in list(lemmas.items()):
            if v in lemmas:
                lemmas[k] = lemmas[v]
                changed = True
    return {k: v for k, v in lemmas.items() if k != v}


def main() -> None:
    lm_pos = harvest(ROOT / "data" / "lm_positive.txt")
    lm_neg = harvest(ROOT / "data" / "lm_negative.txt")
    stop = sorted(w for w in ENGLISH_STOP_WORDS if w.isalpha())

    english = sorted(set(COMMON_WORDS) | set(lm_pos) | set(lm_neg) | set(stop))
    lemmas = derive_lemmas(set(english))

    RES.mkdir(parents=True, exist_ok=True)
    (RES / "english.txt").write_text("\n".join(english) + "\n", encoding="utf-8")
    (RES / "stopwords.txt").write_text("\n".join(stop) + "\n", encoding="utf-8")
    with open(RES / "lemmas.tsv", "w", encoding="utf-8") as f:
        for k in sorted(lemmas):
            f.write(f"{k}\t{lemmas[k]}\n")

    print(f"english: {len(english)}  stopwords: {len(stop)}  lemmas: {len(lemmas)}")


if __name__ == "__main__":
    main()
