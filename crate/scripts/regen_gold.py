#!/usr/bin/env python3
"""Regenerates the gold answer sets of the bundled evaluation suite by a
brute-force scan of the instance TSV — deliberately independent of the
Rust knowledge base and the SPARQL engine.

Each suite question has a hand-written rule below that recomputes its
expected answers straight from the raw rows (inverse/symmetric/subclass
entailments are unfolded inline where a rule needs them). Run from the
repository root:

    python3 scripts/regen_gold.py            # verify, exit 1 on drift
    python3 scripts/regen_gold.py --write    # rewrite suite.jsonl
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "crates" / "geoqa" / "data"
SUITE = DATA / "suite.jsonl"
INSTANCES = DATA / "instances.tsv"


def load_rows():
    types = {}  # individual -> class
    asserts = []  # (s, p, o)
    for line in INSTANCES.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if cols[0] == "individual":
            types[cols[1]] = cols[2]
        elif cols[0] == "assert":
            asserts.append((cols[1], cols[2], cols[3]))
    return types, asserts


TYPES, ASSERTS = load_rows()


def of_class(cls):
    # Ilce is a subclass of Sehir; a class query over Sehir sees both
    out = {i for i, c in TYPES.items() if c == cls}
    if cls == "Sehir":
        out |= {i for i, c in TYPES.items() if c == "Ilce"}
    return out


def komsu(of):
    # komsu is symmetric
    out = {o for s, p, o in ASSERTS if p == "komsu" and s == of}
    out |= {s for s, p, o in ASSERTS if p == "komsu" and o == of}
    return {f"ins:{i}" for i in out}


def value(subject, prop):
    return [o for s, p, o in ASSERTS if s == subject and p == prop]


def located_in(region, cls):
    # (region konumVar x) holds by inverse closure of (x konumlanir region)
    return {
        s
        for s, p, o in ASSERTS
        if p == "konumlanir" and o == region and s in of_class(cls)
    }


def values_of(individuals, prop):
    return [o for s, p, o in ASSERTS if p == prop and s in individuals]


def argbest(cls, region, prop, best):
    members = located_in(region, cls)
    pairs = [(s, int(o)) for s, p, o in ASSERTS if p == prop and s in members]
    target = best(v for _, v in pairs)
    winners = {s for s, v in pairs if v == target}
    # the outer Type-1 block re-matches every class member on the value
    winners |= {
        s for s, p, o in ASSERTS if p == prop and s in of_class(cls) and int(o) == target
    }
    return {f"ins:{w}" for w in winners} | {str(target)}


GOLD_RULES = {
    "Ankara iline komşu olan illeri gösterir misin ?": lambda: komsu("Ankara"),
    "İzmir iline komşu olan illeri gösterir misin ?": lambda: komsu("Izmir"),
    "Bolu iline komşu olan illeri gösterir misin ?": lambda: komsu("Bolu"),
    "Eskişehir'e komşu olan şehirleri gösterir misin ?": lambda: komsu("Eskisehir"),
    "Manisa şehrinin çevresinde hangi şehirler konumlanır ?": lambda: komsu("Manisa"),
    "Ege Bölgesi'nin yüzölçümü ne kadardır ?": lambda: value("EgeBolgesi", "yuzolcumu"),
    "Türkiye'nin başkenti nedir ?": lambda: value("Turkiye", "baskent"),
    "Van Gölü'nün derinliği ne kadardır ?": lambda: value("VanGolu", "derinlik"),
    "Kızılırmak nehrinin uzunluğu ne kadardır ?": lambda: value("Kizilirmak", "uzunluk"),
    "Ağrı Dağı'nın yüksekliği ne kadardır ?": lambda: value("AgriDagi", "yukseklik"),
    "Akdeniz'in derinliği ne kadardır ?": lambda: value("Akdeniz", "derinlik"),
    "Gökçeada'nın yüzölçümü ne kadardır ?": lambda: value("Gokceada", "yuzolcumu"),
    "Bozcaada'nın nüfusu kaçtır ?": lambda: value("Bozcaada", "populasyon"),
    "İstanbul Boğazı'nın uzunluğu ne kadardır ?": lambda: value("IstanbulBogazi", "uzunluk"),
    "Türkiye'nin nüfusu kaçtır ?": lambda: value("Turkiye", "populasyon"),
    "Türkiye'nin yüzölçümü ne kadardır ?": lambda: value("Turkiye", "yuzolcumu"),
    "Karadeniz'in tuzluluğu ne kadardır ?": lambda: value("Karadeniz", "tuzluluk"),
    "Ege Denizi'nin derinliği ne kadardır ?": lambda: value("EgeDenizi", "derinlik"),
    "Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?": lambda: values_of(
        located_in("EgeBolgesi", "Sehir"), "populasyon"
    ),
    "Ege Bölgesi'ndeki nehirlerin uzunluklarını gösterir misin ?": lambda: values_of(
        located_in("EgeBolgesi", "Nehir"), "uzunluk"
    ),
    "Türkiye'deki göllerin derinliklerini gösterir misin ?": lambda: values_of(
        located_in("Turkiye", "Gol"), "derinlik"
    ),
    "Türkiye'deki şehirleri listeler misin ?": lambda: {
        f"ins:{i}" for i in located_in("Turkiye", "Sehir")
    },
    "Akdeniz Bölgesi'nde bulunan dağları gösterir misin ?": lambda: {
        f"ins:{i}" for i in located_in("AkdenizBolgesi", "Dag")
    },
    "Ege Bölgesi'nde bulunan nehirleri gösterir misin ?": lambda: {
        f"ins:{i}" for i in located_in("EgeBolgesi", "Nehir")
    },
    "Konak hangi şehirde konumlanır ?": lambda: {
        f"ins:{o}"
        for s, p, o in ASSERTS
        if s == "Konak" and p == "konumlanir" and o in of_class("Sehir")
    },
    "İzmir şehri hangi bölgededir ?": lambda: {
        f"ins:{o}"
        for s, p, o in ASSERTS
        if s == "Izmir" and p == "konumlanir" and o in of_class("Bolge")
    },
    "Türkiye'nin en derin denizi hangisidir ?": lambda: argbest("Deniz", "Turkiye", "derinlik", max),
    "Türkiye'nin en sığ denizi hangisidir ?": lambda: argbest("Deniz", "Turkiye", "derinlik", min),
    "İzmir'in en yüksek dağı hangisidir ?": lambda: argbest("Dag", "Izmir", "yukseklik", max),
    "Türkiye'de en fazla yağış alan il hangisidir ?": lambda: argbest("Sehir", "Turkiye", "ortYagis", max),
    "Türkiye'nin en yağışlı ili hangisidir ?": lambda: argbest("Sehir", "Turkiye", "ortYagis", max),
    "Türkiye'nin en kalabalık ili hangisidir ?": lambda: argbest("Sehir", "Turkiye", "populasyon", max),
    "Türkiye'nin en büyük bölgesi hangisidir ?": lambda: argbest("Bolge", "Turkiye", "yuzolcumu", max),
    "Türkiye'nin en küçük bölgesi hangisidir ?": lambda: argbest("Bolge", "Turkiye", "yuzolcumu", min),
    "Türkiye'nin en uzun nehri hangisidir ?": lambda: argbest("Nehir", "Turkiye", "uzunluk", max),
    "Türkiye'nin en tuzlu denizi hangisidir ?": lambda: argbest("Deniz", "Turkiye", "tuzluluk", max),
    "Ege Bölgesi'nde kaç şehir vardır ?": lambda: [str(len(located_in("EgeBolgesi", "Sehir")))],
    "Akdeniz Bölgesi'nde kaç dağ vardır ?": lambda: [str(len(located_in("AkdenizBolgesi", "Dag")))],
    "Türkiye'de kaç bölge vardır ?": lambda: [str(len(located_in("Turkiye", "Bolge")))],
    "İzmir'de kaç ilçe vardır ?": lambda: [str(len(located_in("Izmir", "Ilce")))],
    "Ankara'nın kaç komşusu vardır ?": lambda: [str(len(komsu("Ankara")))],
    "Ege Bölgesi'ndeki şehirlerin toplam nüfusu nedir ?": lambda: [
        str(sum(int(v) for v in values_of(located_in("EgeBolgesi", "Sehir"), "populasyon")))
    ],
    "Mars'ta kaç şehir vardır ?": lambda: [],
    "Zürafalar kaç yıl yaşar ?": lambda: [],
    "Ankara'nın iklimi nasıldır ?": lambda: [],
    "Ege Bölgesi'nin başkenti nedir ?": lambda: [],
}


def main():
    write = "--write" in sys.argv
    lines = SUITE.read_text(encoding="utf-8").splitlines()
    out_lines = []
    drift = 0
    seen = set()
    for line in lines:
        if not line.strip() or line.startswith("#"):
            out_lines.append(line)
            continue
        record = json.loads(line)
        question = record["question"]
        seen.add(question)
        if question not in GOLD_RULES:
            print(f"no gold rule for: {question}", file=sys.stderr)
            sys.exit(1)
        regenerated = sorted(set(GOLD_RULES[question]()))
        current = sorted(set(record["gold"]))
        if regenerated != current:
            drift += 1
            print(f"drift: {question}")
            print(f"  committed:   {current}")
            print(f"  regenerated: {regenerated}")
            record["gold"] = regenerated
        out_lines.append(json.dumps(record, ensure_ascii=False))
    missing = set(GOLD_RULES) - seen
    if missing:
        print(f"rules without suite questions: {sorted(missing)}", file=sys.stderr)
        sys.exit(1)
    if write:
        SUITE.write_text("\n".join(out_lines) + "\n", encoding="utf-8")
        print(f"rewrote {SUITE} ({drift} records changed)")
    elif drift:
        print(f"{drift} gold records drifted; run with --write to update")
        sys.exit(1)
    else:
        print(f"all {len(seen)} gold records match the brute-force scan")


if __name__ == "__main__":
    main()
