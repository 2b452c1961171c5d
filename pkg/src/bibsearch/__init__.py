"""Federated bibliographic search with two vagueness treatments and
bibliometric re-ranking: crosswalk-based query translation between
controlled vocabularies, statistical search term recommendation, and
result-set reordering by core-journal productivity and co-author
betweenness centrality.
"""

__version__ = "0.1.0"
