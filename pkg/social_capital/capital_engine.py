"""
Capacity, benevolence, and social capital of the agents of a subgroup.
"""

import math
import logging
import dataclasses
from enum import Enum
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from social_capital.exceptions import NoPeersError, ValidationError
from social_capital.model import InteractionEvent
import social_capital.defaults as Defaults


HopDistances = Mapping[Tuple[str, str], int]


class BeliefMode(str, Enum):
    RATIO = 'ratio'
    EXPONENTIAL = 'exp'


@dataclass(frozen=True)
class BeliefConfig:
    """Decay of belief over the hops between an acquirer and a provider."""

    lam: float = Defaults.LAMBDA
    mode: BeliefMode = BeliefMode.RATIO

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam < 0:
            raise ValidationError(f'lambda must be non-negative: {self.lam}',
                                  field='lambda', stage='capital-engine')
        object.__setattr__(self, 'mode', BeliefMode(self.mode))


@dataclass(frozen=True)
class CapitalRow:
    """Capital measurements of one agent for one task and interval."""

    agent_id: str
    task_id: str
    interval: int
    relation: float
    capacity: float
    benevolence: float = 0.0
    potential_benevolence: float = 0.0
    instant_sc: float = 0.0
    accumulative_sc: float = 0.0


def capacity(capability: float, willingness: float, availability: float) -> float:
    """Capacity of an agent: (capability + willingness) x availability."""

    return (capability + willingness) * availability


def capacity_from_commits(events: Sequence[InteractionEvent], agent_id: str) -> int:
    """Number of distinct commits an agent authored."""

    return len({event.commit_id for event in events if event.agent_id == agent_id})


def benevolence(relation: float, capacity: float) -> float:
    """Benevolence an agent directs at its peers: relation x capacity."""

    return relation * capacity


def belief_factor(hop_distance: int, belief: BeliefConfig) -> float:
    """Belief in a provider the given number of explicit hops away."""

    if hop_distance < 0:
        raise ValidationError(f'hop distance must be non-negative: {hop_distance}',
                              field='hop_distance', stage='capital-engine')

    if belief.mode == BeliefMode.RATIO:
        return 1.0

    return math.exp(-belief.lam * hop_distance)


def _split(agent_id: str, rows: Sequence[CapitalRow]) -> Tuple[CapitalRow, List[CapitalRow]]:
    own = None
    peers = []
    for row in rows:
        if row.agent_id == agent_id:
            own = row
        else:
            peers.append(row)

    if own is None or not peers:
        raise NoPeersError('no peers')

    return own, peers


def _peer_beliefs(agent_id: str,
                  peers: Sequence[CapitalRow],
                  belief: BeliefConfig,
                  hops: Optional[HopDistances]) -> List[Tuple[CapitalRow, float]]:
    """Belief factor of each peer; peers the agent cannot reach are left out."""

    weighted = []
    for peer in peers:
        if belief.mode == BeliefMode.RATIO:
            weighted.append((peer, 1.0))
            continue

        distance = 1 if hops is None else hops.get((agent_id, peer.agent_id))
        if distance is not None:
            weighted.append((peer, belief_factor(distance, belief)))

    return weighted


def potential_benevolence(agent_id: str,
                          rows: Sequence[CapitalRow],
                          belief: BeliefConfig,
                          hops: Optional[HopDistances] = None) -> float:
    """Belief-weighted benevolence an agent could receive from its peers.

    Parameters
    ----------
    agent_id : str
        Receiving agent.
    rows : list[CapitalRow]
        Rows of every agent of the subgroup for one task and interval,
        with benevolence computed.
    belief : BeliefConfig
        Belief function.
    hops : dict[(acquirer, provider)] -> int
        Hop distances used by the exponential belief function; every
        peer is one hop away if not given.

    Returns
    -------
    float
        Sum of the peers' benevolence weighted by belief.
    """

    _own, peers = _split(agent_id, rows)

    return math.fsum(factor * peer.benevolence
                     for peer, factor in _peer_beliefs(agent_id, peers, belief, hops))


def conditional_benevolence(benevolence_in: float, potential_in: float) -> float:
    """Expected benevolence given the potential benevolence; zero when there is no potential."""

    if potential_in > 0:
        return benevolence_in / potential_in

    return 0.0


def instant_sc(agent_id: str,
               rows: Sequence[CapitalRow],
               belief: BeliefConfig,
               hops: Optional[HopDistances] = None) -> float:
    """Social capital an agent gains over one interval.

    The agent's benevolence relative to the undecayed benevolence of
    its peers is shared over those peers in proportion to their
    benevolence, and each share is weighted by the belief in that peer.
    Peers the agent cannot reach contribute nothing. In ratio mode this
    is the conditional benevolence itself.
    """

    own, peers = _split(agent_id, rows)

    if belief.mode == BeliefMode.RATIO:
        return conditional_benevolence(own.benevolence, own.potential_benevolence)

    total = math.fsum(peer.benevolence for peer in peers)
    expected = conditional_benevolence(own.benevolence, total)
    if expected == 0:
        return 0.0

    return math.fsum(factor * expected * peer.benevolence / total
                     for peer, factor in _peer_beliefs(agent_id, peers, belief, hops))


def accumulate_sc(previous: float, instant: float) -> float:
    return previous + instant


def net_sc(rows: Sequence[CapitalRow], accumulative: bool = False) -> float:
    """Social capital of the subgroup: the sum of its agents' instant (or accumulative) SC."""

    if not rows:
        raise ValidationError('empty group', field='rows', stage='capital-engine')

    if accumulative:
        return math.fsum(row.accumulative_sc for row in rows)

    return math.fsum(row.instant_sc for row in rows)


def hop_distances(digraph: nx.DiGraph, agents: Sequence[str]) -> Dict[Tuple[str, str], int]:
    """Number of explicit links between each ordered pair of agents, where a path exists."""

    distances = {}
    for source in agents:
        if source not in digraph:
            continue
        for target, distance in nx.single_source_shortest_path_length(digraph, source).items():
            if target != source and target in agents:
                distances[(source, target)] = distance

    return distances


class CapitalEngine():
    """Measure the social capital of a subgroup interval by interval."""

    def __init__(self, belief: Optional[BeliefConfig] = None):
        """Initialization."""

        self.logger = logging.getLogger('timestamp')
        self.belief = belief or BeliefConfig()

    def measure_interval(self,
                         task_id: str,
                         interval: int,
                         relations: Mapping[str, float],
                         capacities: Mapping[str, float],
                         accumulated: Mapping[str, float],
                         hops: Optional[HopDistances] = None) -> List[CapitalRow]:
        """Capital rows of the agents active in one interval.

        Parameters
        ----------
        task_id : str
            Task being measured.
        interval : int
            Index of the interval.
        relations : dict[agent_id] -> float
            Relation of each active agent, in report order.
        capacities : dict[agent_id] -> float
            Capacity of each agent.
        accumulated : dict[agent_id] -> float
            Accumulative SC of each agent before this interval.
        hops : dict[(acquirer, provider)] -> int
            Hop distances for the exponential belief function.

        Returns
        -------
        list[CapitalRow]
            One row per active agent.
        """

        rows = []
        for agent_id, relation in relations.items():
            agent_capacity = capacities.get(agent_id, 0.0)
            rows.append(CapitalRow(agent_id=agent_id,
                                   task_id=task_id,
                                   interval=interval,
                                   relation=relation,
                                   capacity=agent_capacity,
                                   benevolence=benevolence(relation, agent_capacity)))

        if len(rows) < 2:
            self.logger.warning(f'Interval {interval + 1} has fewer than two active agents; no capital exchanged.')
            return [dataclasses.replace(row,
                                        accumulative_sc=accumulate_sc(accumulated.get(row.agent_id, 0.0), 0.0))
                    for row in rows]

        rows = [dataclasses.replace(row,
                                    potential_benevolence=potential_benevolence(row.agent_id, rows, self.belief, hops))
                for row in rows]

        measured = []
        for row in rows:
            sc = instant_sc(row.agent_id, rows, self.belief, hops)
            measured.append(dataclasses.replace(row,
                                                instant_sc=sc,
                                                accumulative_sc=accumulate_sc(accumulated.get(row.agent_id, 0.0), sc)))

        return measured
