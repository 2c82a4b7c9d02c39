"""Recount the desk25 fixture from the raw CSV and data tables, then compare
with the golden report files. Shares no code with the C++ implementation."""

import csv
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
FIXTURE = ROOT / "tests/fixtures/desk25.csv"
GOLDEN = ROOT / "tests/golden/desk25"

GROUP_LABELS = {
    "Arabic": "Arabic", "Basque": "Basque", "Catalan": "Catalan", "Chinese": "Chinese",
    "English": "English", "French": "French", "Indic": "Indic", "Indonesian": "Indonesian",
    "NigerCongo": "Niger-Congo", "Portuguese": "Portuguese", "Spanish": "Spanish",
    "Vietnamese": "Vietnamese", "Programming": "Programming languages",
}


def read_tsv(name):
    rows = []
    for line in (ROOT / "data" / name).read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append(line.split("\t"))
    return rows


SUBTAG_GROUP = {r[0].lower(): r[1] for r in read_tsv("language_groups.tsv")}
GAZ = {}
FIRST_NAME_FOR_CODE = {}
for name, level, code, area in read_tsv("gazetteer.tsv"):
    GAZ.setdefault(name.strip().lower(), (level, code, area))
    if code and level == "country":
        FIRST_NAME_FOR_CODE.setdefault(code, name)


def multi(cell):
    return [x for x in cell.split("|")] if cell else []


def language_items(row):
    out = []
    for item in multi(row["languages"]):
        if ":" in item:
            group, tag = item.split(":", 1)
            out.append((group, tag or None))
        else:
            out.append((None, item))
    return out


def tag_group(tag):
    subs = tag.split("-")
    if len(subs) > 1 and len(subs[1]) == 3 and subs[1].isalpha() and subs[1].lower() in SUBTAG_GROUP:
        return SUBTAG_GROUP[subs[1].lower()]
    if tag.lower().startswith("x-code"):
        return "Programming"
    return SUBTAG_GROUP.get(subs[0].lower())


def groups(row):
    gs = set()
    for group, tag in language_items(row):
        g = group or tag_group(tag)
        gs.add(g if g else "other")
    return gs


def area(place):
    rec = GAZ.get(place.strip().lower())
    return rec[2] if rec else None


def custodian_label(row, by_uid):
    loc = row["custodian.location"]
    if not loc and row["custodian.link_uid"]:
        target = by_uid.get(row["custodian.link_uid"])
        if target is not None and target["rtype"] == "organization":
            loc = target["custodian.location"]
    if not loc:
        return None
    rec = GAZ.get(loc.strip().lower())
    if rec and rec[1]:
        return FIRST_NAME_FOR_CODE[rec[1]]
    return loc.strip()


def custodian_type(row, by_uid):
    t = row["custodian.type"]
    if not t and row["custodian.link_uid"]:
        target = by_uid.get(row["custodian.link_uid"])
        if target is not None and target["rtype"] == "organization":
            t = target["custodian.type"]
    return t or None


def has_custodian(row):
    return any(row[c] for c in row if c.startswith("custodian."))


def golden_counts(name):
    with open(GOLDEN / name, newline="", encoding="utf-8") as f:
        return {r["id"]: int(r["count"]) for r in csv.DictReader(f) if int(r["count"]) > 0}


def main():
    with open(FIXTURE, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    by_uid = {r["uid"]: r for r in rows}
    failures = []

    def expect(name, got, want):
        if got != want:
            failures.append(f"{name}: golden {got} != recount {want}")

    expect("types", golden_counts("types.csv"), dict(Counter(r["rtype"] for r in rows)))

    lang = Counter()
    for r in rows:
        lang.update(groups(r))
    expect("languages", golden_counts("languages.csv"), dict(lang))

    first = Counter()
    for r in rows:
        locs = multi(r["locations"])
        first[area(locs[0]) if locs and area(locs[0]) else "missing"] += 1
    expect("locations", golden_counts("locations.csv"), {k: v for k, v in first.items() if v})

    for g in ("NigerCongo", "English"):
        regions = Counter()
        for r in rows:
            if g not in groups(r):
                continue
            areas = {area(p) for p in multi(r["locations"])} - {None}
            regions.update(areas if areas else {"missing"})
        expect(f"language-regions {g}", golden_counts(f"language-regions.{g}.csv"), dict(regions))

    ctypes = Counter((custodian_type(r, by_uid) if has_custodian(r) else None) or "missing" for r in rows)
    expect("custodian-types", golden_counts("custodian-types.csv"), dict(ctypes))

    labels = Counter()
    missing = 0
    for r in rows:
        lab = custodian_label(r, by_uid) if has_custodian(r) else None
        if lab is None:
            missing += 1
        else:
            labels[lab] += 1
    ranked = sorted(labels.items(), key=lambda kv: (-kv[1], kv[0]))
    for top, name in ((10, "custodian-locations.csv"), (3, "custodian-locations.top3.csv")):
        want = {label: n for label, n in ranked[:top]}
        want["missing"] = missing
        expect(name, golden_counts(name), want)

    available = [r for r in rows if r["rtype"] != "organization"]
    lic = Counter()
    for r in available:
        props = multi(r["license.properties"])
        lic.update(props if props else ["missing"])
    expect("licenses", golden_counts("licenses.csv"), dict(lic))

    pii = Counter(r["pii.contains"] or "answer_missing" for r in available)
    expect("pii", golden_counts("pii.csv"), dict(pii))

    holders = {}
    in_group = {}
    for r in rows:
        for group, tag in language_items(r):
            if tag:
                holders.setdefault(tag, set()).add(r["uid"])
                in_group[tag] = tag_group(tag) is not None
    for suffix, exclude in (("", False), (".excluded", True)):
        want = sorted(t for t, h in holders.items() if len(h) <= 2 and not (exclude and in_group[t]))
        got = (GOLDEN / f"singletons{suffix}.csv").read_text(encoding="utf-8").split("\n")[1:-1]
        expect(f"singletons{suffix}", got, want)

    with open(GOLDEN / "type-by-language-group.csv", newline="", encoding="utf-8") as f:
        tab = {r["id"]: {k: int(v) for k, v in r.items() if k not in ("id", "label")} for r in csv.DictReader(f)}
    want_tab = {g: {t: 0 for t in ("primary_source", "processed_dataset", "organization")} for g in GROUP_LABELS}
    for r in rows:
        for g in groups(r) - {"other"}:
            want_tab[g][r["rtype"]] += 1
    expect("type-by-language-group", tab, want_tab)

    for msg in failures:
        print("MISMATCH", msg)
    print(f"{'ok' if not failures else 'FAILED'}: {len(rows)} entries recounted")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
