"""
Explicit and implicit links between agents and the relations derived from them.

Explicit links accumulate interaction values over an interval. Implicit
links close explicit paths between agents that have not interacted
directly, and are promoted to explicit links once they reach the
threshold tau. Relations are the most repeated combined link value of a
pair over the subtasks of a task.
"""

import math
import logging
import dataclasses
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from social_capital.exceptions import (DegenerateRelationError,
                                       UnreachableError,
                                       ValidationError)
from social_capital.model import (Interval,
                                  InteractionEvent,
                                  LinkKind,
                                  LinkState,
                                  RelationMatrix)
import social_capital.defaults as Defaults


Pair = Tuple[str, str]


class LinkGraph():
    """Explicit and implicit links of a working subgroup, per subtask.

    At most one explicit and one implicit link is kept for each
    ordered (source, target, subtask) triple.
    """

    def __init__(self, tau: float = Defaults.TAU, links: Iterable[LinkState] = ()):
        """Initialization."""

        if not math.isfinite(tau) or tau < 0:
            raise ValidationError(f'tau must be non-negative: {tau}', field='tau', stage='link-engine')

        self.tau = tau
        self._links = {LinkKind.EXPLICIT: defaultdict(dict),
                       LinkKind.IMPLICIT: defaultdict(dict)}

        for link in links:
            self.add(link)

    def add(self, link: LinkState) -> None:
        """Add or replace a link.

        An explicit link replaces any implicit link of the same
        triple, since promotion never goes back.
        """

        self._links[link.kind][link.subtask_id][link.pair] = link
        if link.kind == LinkKind.EXPLICIT:
            self._links[LinkKind.IMPLICIT][link.subtask_id].pop(link.pair, None)

    def get(self, subtask_id: str, source: str, target: str,
            kind: LinkKind = LinkKind.EXPLICIT) -> Optional[LinkState]:
        return self._links[kind].get(subtask_id, {}).get((source, target))

    def links(self, subtask_id: Optional[str] = None,
              kind: LinkKind = LinkKind.EXPLICIT) -> List[LinkState]:
        """Links of one kind, ordered by subtask then pair."""

        if subtask_id is not None:
            subtask_links = self._links[kind].get(subtask_id, {})
            return [subtask_links[pair] for pair in sorted(subtask_links)]

        return [link for s in self.subtasks() for link in self.links(s, kind)]

    def subtasks(self) -> List[str]:
        subtasks = set()
        for kind_links in self._links.values():
            subtasks.update(s for s, links in kind_links.items() if links)

        return sorted(subtasks)

    def pairs(self) -> List[Pair]:
        """Ordered pairs joined by a link of either kind on any subtask."""

        pairs = set()
        for kind_links in self._links.values():
            for subtask_links in kind_links.values():
                pairs.update(subtask_links)

        return sorted(pairs)

    def to_digraph(self, subtask_id: str) -> nx.DiGraph:
        """Explicit links of a subtask as a directed graph weighted by link value."""

        digraph = nx.DiGraph()
        for link in self.links(subtask_id):
            digraph.add_edge(link.source, link.target, weight=link.value)

        return digraph

    def union_digraph(self) -> nx.DiGraph:
        """Explicit links of all subtasks as a single directed graph."""

        digraph = nx.DiGraph()
        for link in self.links():
            digraph.add_edge(link.source, link.target)

        return digraph

    def __len__(self) -> int:
        return sum(len(links) for kind_links in self._links.values() for links in kind_links.values())


def _check_explicit(link: LinkState, name: str) -> None:
    if link.kind != LinkKind.EXPLICIT:
        raise ValidationError(f'{name} must be an explicit link', field='kind', stage='link-engine')


def accumulate_explicit(link: LinkState,
                        events: Sequence[InteractionEvent],
                        interval: Union[Interval, Tuple[int, int]]) -> LinkState:
    """Accumulate the interaction values of events into an explicit link.

    Parameters
    ----------
    link : LinkState
        Explicit link holding the value at the start of the interval.
    events : list[InteractionEvent]
        Events of the link's source agent on the link's subtask.
    interval : Interval or (start, end)
        Half-open interval the events must lie within.

    Returns
    -------
    LinkState
        New link with the summed interaction values added to its value.
    """

    _check_explicit(link, 'link')

    if not isinstance(interval, Interval):
        interval = Interval(*interval)

    total = 0
    for event in events:
        if event.timestamp not in interval:
            raise ValidationError(f'event outside interval: {event.timestamp}',
                                  field='timestamp', stage='link-engine')
        if event.subtask_id != link.subtask_id:
            raise ValidationError(f'subtask mismatch: {event.subtask_id} != {link.subtask_id}',
                                  field='subtask_id', stage='link-engine')
        if event.agent_id != link.source:
            raise ValidationError(f'event by {event.agent_id} on link from {link.source}',
                                  field='agent_id', stage='link-engine')
        total += event.value

    return dataclasses.replace(link, value=link.value + total)


def triadic_implicit(l_ab: LinkState, l_bc: LinkState, r_ab: float, r_bc: float) -> LinkState:
    """Implicit link a->c closing the explicit links a->b and b->c."""

    _check_explicit(l_ab, 'l_ab')
    _check_explicit(l_bc, 'l_bc')

    if l_ab.target != l_bc.source:
        raise ValidationError('links do not share a middle agent', field='source', stage='link-engine')
    if l_ab.subtask_id != l_bc.subtask_id:
        raise ValidationError('links are on different subtasks', field='subtask_id', stage='link-engine')

    denominator = abs(r_ab + r_bc)
    if denominator == 0:
        raise DegenerateRelationError('degenerate relation sum')

    return LinkState(source=l_ab.source,
                     target=l_bc.target,
                     subtask_id=l_ab.subtask_id,
                     value=(l_ab.value + l_bc.value) / denominator ** 2,
                     kind=LinkKind.IMPLICIT)


def path_implicit(path_links: Sequence[LinkState], path_relations: Sequence[float]) -> LinkState:
    """Implicit link between the ends of a path of unrepeated explicit links.

    Parameters
    ----------
    path_links : list[LinkState]
        Explicit links in path order, each starting where the previous ends.
    path_relations : list[float]
        Relation of each hop of the path, in the same order.

    Returns
    -------
    LinkState
        Implicit link whose value is the total link value of the path
        divided by the squared magnitude of its total relation.
    """

    if not path_links:
        raise ValidationError('empty path', field='path_links', stage='link-engine')
    if len(path_links) != len(path_relations):
        raise ValidationError('path links and relations differ in length',
                              field='path_relations', stage='link-engine')

    seen = set()
    for idx, link in enumerate(path_links):
        _check_explicit(link, f'path link {idx}')
        if link.subtask_id != path_links[0].subtask_id:
            raise ValidationError('path spans several subtasks', field='subtask_id', stage='link-engine')
        if link.pair in seen:
            raise ValidationError(f'repeated link {link.source}->{link.target}',
                                  field='path_links', stage='link-engine')
        seen.add(link.pair)
        if idx > 0 and path_links[idx - 1].target != link.source:
            raise ValidationError('disconnected path', field='path_links', stage='link-engine')

    denominator = abs(sum(path_relations))
    if denominator == 0:
        raise DegenerateRelationError('degenerate relation sum')

    return LinkState(source=path_links[0].source,
                     target=path_links[-1].target,
                     subtask_id=path_links[0].subtask_id,
                     value=sum(link.value for link in path_links) / denominator ** 2,
                     kind=LinkKind.IMPLICIT)


def select_path(graph: LinkGraph,
                source: str,
                target: str,
                subtask_id: str,
                max_hops: Optional[int] = None) -> List[LinkState]:
    """Simple explicit path from source to target with the largest total link value.

    Ties are broken by the shorter path and then by the lexicographic
    order of the agent ids along the path.

    Raises
    ------
    UnreachableError
        If no explicit path joins source to target.
    """

    if source == target:
        raise ValidationError('source and target must differ', field='target', stage='link-engine')

    digraph = graph.to_digraph(subtask_id)
    if source not in digraph or target not in digraph:
        raise UnreachableError(f'{target} unreachable from {source} on {subtask_id}')

    best_key = None
    best_nodes = None
    for nodes in nx.all_simple_paths(digraph, source, target, cutoff=max_hops):
        volume = sum(digraph[u][v]['weight'] for u, v in zip(nodes, nodes[1:]))
        key = (-volume, len(nodes), nodes)
        if best_key is None or key < best_key:
            best_key = key
            best_nodes = nodes

    if best_nodes is None:
        raise UnreachableError(f'{target} unreachable from {source} on {subtask_id}')

    return [graph.get(subtask_id, u, v) for u, v in zip(best_nodes, best_nodes[1:])]


def update_relation(explicit_values: Sequence[float], implicit_values: Sequence[float]) -> float:
    """Most repeated combined link value over the subtasks of a task.

    The lists are aligned by subtask; an empty list counts as zeros.
    When several values are equally frequent, including the case where
    every value is distinct, the largest of them is returned.
    """

    if not explicit_values and not implicit_values:
        raise ValidationError('no link observations', field='values', stage='link-engine')

    if not implicit_values:
        implicit_values = [0.0] * len(explicit_values)
    elif not explicit_values:
        explicit_values = [0.0] * len(implicit_values)
    elif len(explicit_values) != len(implicit_values):
        raise ValidationError('explicit and implicit values are not aligned by subtask',
                              field='values', stage='link-engine')

    counts = Counter(e + i for e, i in zip(explicit_values, implicit_values))
    top = max(counts.values())

    return max(value for value, count in counts.items() if count == top)


def promote(link: LinkState, tau: float) -> LinkState:
    """Treat an implicit link as explicit once its value reaches tau."""

    if link.kind == LinkKind.IMPLICIT and link.value >= tau:
        return dataclasses.replace(link, kind=LinkKind.EXPLICIT)

    return link


@dataclass
class IntervalLinks:
    """Links and relations of one task over one interval."""

    task_id: str
    interval: Interval
    graph: LinkGraph
    relations: RelationMatrix
    agent_relations: Dict[str, float] = field(default_factory=dict)
    agent_links: Dict[str, float] = field(default_factory=dict)
    promoted: List[LinkState] = field(default_factory=list)
    diagnostics: Dict[str, int] = field(default_factory=dict)


class LinkEngine():
    """Update the links and relations of a task interval by interval."""

    def __init__(self,
                 tau: float = Defaults.TAU,
                 carry_links: bool = False,
                 max_path_hops: Optional[int] = Defaults.MAX_PATH_HOPS):
        """Initialization."""

        self.logger = logging.getLogger('timestamp')

        self.tau = tau
        self.carry_links = carry_links
        self.max_path_hops = max_path_hops

    def seed_links(self, previous: Optional[IntervalLinks]) -> Dict[Tuple[str, Pair], LinkState]:
        """Explicit links whose values carry into the next interval.

        Promoted links always carry over; other explicit links only
        when links are carried between intervals.
        """

        seeds = {}
        if previous is None:
            return seeds

        if self.carry_links:
            for link in previous.graph.links():
                seeds[(link.subtask_id, link.pair)] = link

        for link in previous.promoted:
            seeds[(link.subtask_id, link.pair)] = previous.graph.get(link.subtask_id, *link.pair) or link

        return seeds

    def relations(self, task_id: str, graph: LinkGraph, include_implicit: bool) -> RelationMatrix:
        """Relation of every linked pair over the subtasks where the pair has a link."""

        explicit_values = defaultdict(list)
        implicit_values = defaultdict(list)
        for subtask_id in graph.subtasks():
            pairs = {link.pair for link in graph.links(subtask_id)}
            if include_implicit:
                pairs.update(link.pair for link in graph.links(subtask_id, LinkKind.IMPLICIT))

            for pair in sorted(pairs):
                explicit = graph.get(subtask_id, *pair)
                implicit = graph.get(subtask_id, *pair, kind=LinkKind.IMPLICIT) if include_implicit else None
                explicit_values[pair].append(explicit.value if explicit else 0.0)
                implicit_values[pair].append(implicit.value if implicit else 0.0)

        return RelationMatrix(task_id, {pair: update_relation(explicit_values[pair], implicit_values[pair])
                                        for pair in explicit_values})

    def close(self, graph: LinkGraph, relations: RelationMatrix) -> Tuple[List[LinkState], Dict[str, int]]:
        """Implicit links for every pair that is connected only through explicit paths."""

        implicit_links = []
        tally = {'degenerate_triads': 0, 'unreachable_pairs': 0}
        for subtask_id in graph.subtasks():
            digraph = graph.to_digraph(subtask_id)
            agents = sorted(digraph.nodes)
            for source in agents:
                for target in agents:
                    if source == target or digraph.has_edge(source, target):
                        continue

                    try:
                        path = select_path(graph, source, target, subtask_id, self.max_path_hops)
                    except UnreachableError:
                        tally['unreachable_pairs'] += 1
                        continue

                    path_relations = [relations.get(link.source, link.target) for link in path]
                    try:
                        if len(path) == 2:
                            link = triadic_implicit(path[0], path[1], *path_relations)
                        else:
                            link = path_implicit(path, path_relations)
                    except DegenerateRelationError:
                        tally['degenerate_triads'] += 1
                        continue

                    implicit_links.append(link)

        return implicit_links, tally

    def agent_links(self, graph: LinkGraph) -> Dict[str, float]:
        """Total link value of each agent: its largest outgoing explicit value per subtask, summed."""

        totals = defaultdict(float)
        for subtask_id in graph.subtasks():
            largest = {}
            for link in graph.links(subtask_id):
                largest[link.source] = max(largest.get(link.source, 0.0), link.value)
            for agent_id, value in largest.items():
                totals[agent_id] += value

        return dict(totals)

    def process_interval(self,
                         task_id: str,
                         interval: Interval,
                         derived_links: Sequence[LinkState],
                         previous: Optional[IntervalLinks] = None) -> IntervalLinks:
        """Update explicit links, close implicit links, and update relations for one interval.

        Parameters
        ----------
        task_id : str
            Task the links belong to.
        interval : Interval
            Interval being processed.
        derived_links : list[LinkState]
            Explicit links accumulated from the interval's events.
        previous : IntervalLinks
            Result of the previous interval, if any.

        Returns
        -------
        IntervalLinks
            Links, relations, and diagnostics of the interval.
        """

        graph = LinkGraph(self.tau)

        # explicit links start from the carried value of the previous interval
        seeds = self.seed_links(previous)
        for link in derived_links:
            seed = seeds.pop((link.subtask_id, link.pair), None)
            if seed is not None:
                link = dataclasses.replace(link, value=seed.value + link.value)
            graph.add(link)

        for seed in seeds.values():
            graph.add(dataclasses.replace(seed, kind=LinkKind.EXPLICIT))

        provisional = self.relations(task_id, graph, include_implicit=False)

        implicit_links, tally = self.close(graph, provisional)
        promoted = []
        for link in implicit_links:
            link = promote(link, self.tau)
            if link.kind == LinkKind.EXPLICIT:
                promoted.append(link)
            graph.add(link)

        relations = self.relations(task_id, graph, include_implicit=True)

        agent_relations = {}
        for (source, _target), _value in relations.items():
            if source not in agent_relations:
                agent_relations[source] = update_relation(list(relations.outgoing(source).values()), [])

        diagnostics = {'explicit_links': len(graph.links()),
                       'implicit_links': len(graph.links(kind=LinkKind.IMPLICIT)),
                       'promoted': len(promoted)}
        diagnostics.update(tally)

        return IntervalLinks(task_id=task_id,
                             interval=interval,
                             graph=graph,
                             relations=relations,
                             agent_relations=agent_relations,
                             agent_links=self.agent_links(graph),
                             promoted=promoted,
                             diagnostics=diagnostics)
