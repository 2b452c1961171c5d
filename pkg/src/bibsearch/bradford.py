"""Bradfordizing: core-journal re-ranking and nucleus extraction.

Journals are ranked by how many result-set documents they contributed, then
split into three contiguous zones of roughly equal article yield.  Zone 1 is
the nucleus of core journals; a bradfordized list puts nucleus articles
first, and the nucleus document set can be pulled out on its own to feed a
browsing mode.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .corpus import Corpus
from .errors import DataError
from .index import ResultSet, ordinal_hits

ZONE_COUNT = 3


class EmptyRanking(DataError):
    def __init__(self) -> None:
        super().__init__("cannot partition an empty journal ranking")


@dataclass(frozen=True)
class JournalRank:
    journal: str
    article_count: int
    rank: int  # 1-based


@dataclass
class BradfordPartition:
    """Three contiguous zones of the ranked journal list.

    Zones 1 and 2 are minimal prefixes reaching a third of the total article
    count; zone 3 takes the remainder.  ``multiplier_estimates`` holds the
    journal-count ratios zone2/zone1 and zone3/zone2 (0.0 on an empty
    denominator), which a collection obeying the classic scattering pattern
    makes equal.
    """

    zones: list[list[JournalRank]]
    zone_article_counts: tuple[int, int, int]
    multiplier_estimates: tuple[float, float]
    unassigned_documents: list[str] = field(default_factory=list)

    def nucleus_journals(self) -> set[str]:
        return {jr.journal for jr in self.zones[0]}

    def zone_of(self, journal: str) -> int | None:
        for zone_index, zone in enumerate(self.zones, start=1):
            if any(jr.journal == journal for jr in zone):
                return zone_index
        return None

    def to_json_dict(self) -> dict:
        return {
            "zones": [
                {
                    "journals": [{"title": jr.journal, "count": jr.article_count} for jr in zone],
                    "articles": articles,
                }
                for zone, articles in zip(self.zones, self.zone_article_counts)
            ],
            "multipliers": list(self.multiplier_estimates),
        }


def rank_journals(result_set: ResultSet, corpus: Corpus) -> list[JournalRank]:
    """Rank journals by number of result-set articles, most productive first.

    Ties break alphabetically; documents without a journal are not counted.
    """
    counts: Counter[str] = Counter()
    for hit in result_set.hits:
        journal = corpus.get_record(hit.record_id).journal
        if journal is not None:
            counts[journal] += 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [JournalRank(journal, count, rank) for rank, (journal, count) in enumerate(ordered, start=1)]


def partition_zones(ranks: list[JournalRank]) -> BradfordPartition:
    """Split a journal ranking into three minimal-prefix zones.

    Each of zones 1 and 2 closes at the first journal where the cumulative
    article count reaches a third of the total (compared exactly, 3·cum >= T);
    whole journals are never split across zones.
    """
    if not ranks:
        raise EmptyRanking()
    total = sum(jr.article_count for jr in ranks)

    zones: list[list[JournalRank]] = [[], [], []]
    zone_counts = [0, 0, 0]
    zone_index = 0
    for jr in ranks:
        zones[zone_index].append(jr)
        zone_counts[zone_index] += jr.article_count
        # close zones 1 and 2 as soon as the zone's own yield reaches T/3
        if zone_index < ZONE_COUNT - 1 and 3 * zone_counts[zone_index] >= total:
            zone_index += 1

    def ratio(numerator: int, denominator: int) -> float:
        return numerator / denominator if denominator else 0.0

    multipliers = (
        ratio(len(zones[1]), len(zones[0])),
        ratio(len(zones[2]), len(zones[1])),
    )
    return BradfordPartition(
        zones=zones,
        zone_article_counts=(zone_counts[0], zone_counts[1], zone_counts[2]),
        multiplier_estimates=multipliers,
    )


def partition_result_set(result_set: ResultSet, corpus: Corpus) -> BradfordPartition:
    """Rank, partition and attach the result set's journal-less documents."""
    partition = partition_zones(rank_journals(result_set, corpus))
    partition.unassigned_documents = [
        hit.record_id
        for hit in result_set.hits
        if corpus.get_record(hit.record_id).journal is None
    ]
    return partition


def _bradford_order(result_set: ResultSet, corpus: Corpus) -> list[str]:
    ranks = rank_journals(result_set, corpus)
    rank_of = {jr.journal: jr.rank for jr in ranks}
    with_journal = []
    without_journal = []
    for hit in result_set.hits:
        journal = corpus.get_record(hit.record_id).journal
        if journal is None:
            without_journal.append(hit)
        else:
            with_journal.append((rank_of[journal], hit))
    with_journal.sort(key=lambda item: (item[0], -item[1].score, item[1].record_id))
    return [hit.record_id for _, hit in with_journal] + [hit.record_id for hit in without_journal]


def bradfordize(result_set: ResultSet, corpus: Corpus) -> ResultSet:
    """Reorder a result set core journals first.

    Primary key is journal rank; inside a journal the incoming (baseline)
    order decides; journal-less documents follow all journal articles in
    their incoming order.  The hit set is unchanged and scores become
    1/position ordinals.
    """
    ordered = _bradford_order(result_set, corpus)
    return ResultSet(
        query=result_set.query,
        hits=ordinal_hits(ordered),
        ranking_provenance=result_set.ranking_provenance + ["bradford"],
    )


def nucleus_documents(result_set: ResultSet, corpus: Corpus) -> list[str]:
    """Ids of the documents in core (zone 1) journals, in bradfordized order."""
    ranks = rank_journals(result_set, corpus)
    if not ranks:
        return []
    nucleus = partition_zones(ranks).nucleus_journals()
    return [
        rid
        for rid in _bradford_order(result_set, corpus)
        if corpus.get_record(rid).journal in nucleus
    ]
