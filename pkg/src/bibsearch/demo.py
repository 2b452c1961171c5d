"""Desk-scale demo dataset: two databases, two vocabularies, one crosswalk.

The dataset is small but deliberately shaped:

* every solis record matches the free-text query "labor", giving a stable
  30-document result set;
* ten records form one core journal, three mid journals take ten more
  articles between them, six journals contribute one article each, and four
  records have no journal at all;
* author "Xavier Molina" is the hub of a five-spoke collaboration star
  (betweenness 1.0) but never publishes in the core journal, while the
  "Yuki Tanaka"/"Zofia Nowak" chain (betweenness 2/3) writes core-journal
  papers — so the two filter orders of the combined re-rankers genuinely
  disagree;
* the token "unemployment" and the vocabulary term "Arbeitslosigkeit" are
  planted to co-occur in exactly the ten core-journal records;
* one econlit record is tagged only with the other vocabulary's term, so it
  is reachable from a solis-vocabulary query only through the crosswalk.
"""

from __future__ import annotations

import json
from pathlib import Path

from .index import SearchIndex
from .recommender import build_dictionary, save_dictionary
from .workspace import INDEX_FILE, Workspace, dictionary_path, parse_vocabulary_file

CORE_JOURNAL = "Journal of Labor Research"
HUB_AUTHOR = "Xavier Molina"
PLANTED_TOKEN = "unemployment"
PLANTED_TERM = "Arbeitslosigkeit"
COMMON_QUERY = "labor"

DEMO_VOCABULARIES = [
    {
        "vocab_id": "SOC",
        "name": "Social Science Thesaurus",
        "terms": ["Arbeitslosigkeit", "Migration", "Arbeitsmarkt", "Bildungspolitik", "Sozialpolitik"],
    },
    {
        "vocab_id": "ECON",
        "name": "Economics Classification",
        "terms": ["joblessness", "labour market", "labour mobility", "education economics", "welfare policy"],
    },
]

DEMO_CROSSWALK = [
    ("SOC", "Arbeitslosigkeit", "EQ", "ECON", "joblessness"),
    ("SOC", "Arbeitsmarkt", "EQ", "ECON", "labour market"),
    ("SOC", "Migration", "RT", "ECON", "labour mobility"),
    ("SOC", "Bildungspolitik", "NT", "ECON", "education economics"),
    ("SOC", "Sozialpolitik", "BT", "ECON", "welfare policy"),
]


def _record(rid, title, authors, journal, year, terms, abstract=""):
    rec = {
        "id": rid,
        "database_id": "solis",
        "title": title,
        "authors": authors,
        "controlled_terms": [{"vocab": v, "term": t} for v, t in terms],
    }
    if abstract:
        rec["abstract"] = abstract
    if journal:
        rec["journal"] = journal
    if year:
        rec["year"] = year
    return rec


_SOC_UNEMPLOYMENT = [("SOC", "Arbeitslosigkeit")]
_SOC_MIGRATION = [("SOC", "Migration")]
_SOC_MARKET = [("SOC", "Arbeitsmarkt")]
_SOC_EDUCATION = [("SOC", "Bildungspolitik")]
_SOC_WELFARE = [("SOC", "Sozialpolitik")]


def demo_records() -> list[dict]:
    j1 = CORE_JOURNAL
    j2 = "Migration Studies Quarterly"
    j3 = "Regional Economics Review"
    j4 = "Education Policy Journal"
    records = [
        # core journal: ten articles, planted token/term pair on every one
        _record("d01", "Unemployment dynamics and labor market entry among graduates",
                ["Priya Anand", "Yuki Tanaka"], j1, 2004, _SOC_UNEMPLOYMENT,
                "Panel evidence on unemployment spells after graduation."),
        _record("d02", "Labor market policy and long-term unemployment: labor office case files",
                ["Yuki Tanaka", "Zofia Nowak"], j1, 2005, _SOC_UNEMPLOYMENT,
                "Case files document placement paths out of unemployment."),
        _record("d03", "Unemployment insurance reform and labor supply responses",
                ["Zofia Nowak", "Quentin Marsh"], j1, 2005, _SOC_UNEMPLOYMENT,
                "Benefit reforms shift registered unemployment."),
        _record("d04", "Regional unemployment gaps in the European labor force survey",
                ["Boris Ivanov"], j1, 2003, _SOC_UNEMPLOYMENT),
        _record("d05", "Youth unemployment and labor market segmentation",
                ["Carmen Silva"], j1, 2006, _SOC_UNEMPLOYMENT),
        _record("d06", "Unemployment duration and labor turnover in manufacturing",
                ["Daniel Okeke"], j1, 2002, _SOC_UNEMPLOYMENT),
        _record("d07", "Hidden unemployment and informal labor arrangements",
                ["Elena Petrova"], j1, 2001, _SOC_UNEMPLOYMENT),
        _record("d08", "Unemployment benefits and labor participation of older workers",
                ["Farid Hassan"], j1, 2006, _SOC_UNEMPLOYMENT),
        _record("d09", "Structural unemployment and labor demand shifts",
                ["Greta Lindgren"], j1, 2000, _SOC_UNEMPLOYMENT),
        _record("d10", "Seasonal unemployment patterns in agricultural labor",
                ["Hugo Mbeki"], j1, 1999, _SOC_UNEMPLOYMENT),
        # second-tier journals; the collaboration hub publishes here only
        _record("d11", "Migration histories and labor trajectories of guest workers",
                [HUB_AUTHOR, "Alice Kim"], j2, 2005, _SOC_MIGRATION,
                "Oral histories trace recruitment cohorts."),
        _record("d12", "Return migration and labor reintegration outcomes",
                [HUB_AUTHOR, "Ben Duval"], j2, 2006, _SOC_MIGRATION),
        _record("d13", "Family migration decisions and local labor conditions",
                ["Ingrid Weber"], j2, 2004, _SOC_MIGRATION),
        _record("d14", "Circular migration networks and labor recruitment",
                ["Jonas Berg"], j2, 2003, _SOC_MIGRATION),
        _record("d15", "Regional labor clusters and industrial specialization",
                [HUB_AUTHOR, "Carla Mendes"], j3, 2004, _SOC_MARKET),
        _record("d16", "Commuting zones and cross-border labor flows",
                ["Khalid Noor"], j3, 2005, _SOC_MARKET),
        _record("d17", "Wage convergence across regional labor markets",
                ["Lara Costa"], j3, 2002, _SOC_MARKET),
        _record("d18", "Vocational training reform and labor entry of apprentices",
                [HUB_AUTHOR, "Dmitri Volkov"], j4, 2006, _SOC_EDUCATION),
        _record("d19", "School-to-work transitions and labor prospects",
                ["Marek Gruber"], j4, 2005, _SOC_EDUCATION),
        _record("d20", "Curriculum standards and labor readiness of graduates",
                ["Nadia Rahman"], j4, 2004, _SOC_EDUCATION),
        # scatter: six journals with one article each
        _record("d21", "Social capital and labor attachment in rural communities",
                ["Oskar Lund"], "Acta Sociologica Nova", 2001, _SOC_WELFARE),
        _record("d22", "Urban renewal projects and neighborhood labor effects",
                ["Paolo Ricci"], "Urban Studies Forum", 2003, _SOC_WELFARE),
        _record("d23", "Care work and unpaid labor in ageing societies",
                ["Rosa Delgado"], "Journal of Social Policy Review", 2006, _SOC_WELFARE),
        _record("d24", "Trade union archives and labor historiography",
                ["Samuel Adofo"], "Labour History Notes", 1998, _SOC_WELFARE),
        _record("d25", "Activation programmes and labor outcomes in Nordic states",
                ["Tessa Moreau"], "Scandinavian Employment Bulletin", 2007, _SOC_WELFARE),
        _record("d26", "Minimum income pilots and labor incentives",
                ["Uma Iyer"], "Welfare Research Letters", 2007, _SOC_WELFARE),
        # monograph-style records without a journal
        _record("d27", "Household survey methods for labor research",
                [HUB_AUTHOR, "Emma Fischer"], None, 2002, []),
        _record("d28", "Longitudinal panel design in labor studies",
                [HUB_AUTHOR], None, 2000, []),
        _record("d29", "Interview protocols for labor biographies",
                ["Viktor Hansen"], None, 2001, []),
        _record("d30", "Archival sources on labor organization",
                ["Wendy Clarke"], None, 1999, []),
    ]
    # reachable from SOC queries only through the crosswalk
    econ = _record("d31", "Joblessness spells and welfare transitions in Europe",
                   ["Yara Haddad"], "Labour Economics Letters", 2006,
                   [("ECON", "joblessness")],
                   "Spell durations compared across welfare regimes.")
    econ["database_id"] = "econlit"
    records.append(econ)
    return records


def write_demo_source_files(source_dir: str | Path) -> dict[str, Path]:
    """Write the raw input files the CLI build commands consume."""
    source_dir = Path(source_dir)
    source_dir.mkdir(parents=True, exist_ok=True)
    records_file = source_dir / "records.jsonl"
    with open(records_file, "w", encoding="utf-8") as fh:
        for record in demo_records():
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    vocab_file = source_dir / "vocabularies.json"
    with open(vocab_file, "w", encoding="utf-8") as fh:
        json.dump(DEMO_VOCABULARIES, fh, indent=2)
        fh.write("\n")
    crosswalk_file = source_dir / "crosswalk.csv"
    with open(crosswalk_file, "w", encoding="utf-8") as fh:
        fh.write("source_vocab,source_term,kind,target_vocab,target_term\n")
        for row in DEMO_CROSSWALK:
            fh.write(",".join(row) + "\n")
    return {"records": records_file, "vocabularies": vocab_file, "crosswalk": crosswalk_file}


def build_demo_workspace(data_dir: str | Path) -> Workspace:
    """Run the whole batch build into ``data_dir`` and return the workspace."""
    data_dir = Path(data_dir)
    sources = write_demo_source_files(data_dir / "source")

    workspace = Workspace.load(data_dir, frozen=False)
    for vocab in parse_vocabulary_file(sources["vocabularies"]):
        workspace.corpus.register_vocabulary(vocab)
    workspace.corpus.ingest_records(sources["records"])
    workspace.save_corpus()
    workspace.corpus.freeze()

    workspace.store.load_crosswalk(sources["crosswalk"])
    workspace.save_crosswalk()

    index = SearchIndex.build(workspace.corpus)
    index.save(data_dir / INDEX_FILE)
    workspace.index = index

    dictionary = build_dictionary(workspace.corpus, "SOC", min_cooccurrence=2)
    save_dictionary(dictionary, dictionary_path(data_dir, "SOC"))
    workspace.dictionaries["SOC"] = dictionary
    return workspace
