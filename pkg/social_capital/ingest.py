"""
Map contribution records onto the task hierarchy and derive co-edit links.

A package is a task and a class is a subtask. Two contributors are
explicitly linked on a class when both changed it within the same
interval.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from social_capital.event_io import ContributionRecord
from social_capital.exceptions import ValidationError
from social_capital.link_engine import accumulate_explicit
from social_capital.model import (Interval,
                                  InteractionEvent,
                                  LinkState,
                                  TaskHierarchy,
                                  build_hierarchy,
                                  validate_event)


@dataclass
class BucketedEvents:
    """Events grouped by the interval containing them."""

    buckets: List[List[InteractionEvent]]
    out_of_range: int = 0

    @property
    def in_range(self) -> int:
        return sum(len(bucket) for bucket in self.buckets)

    def all_events(self) -> List[InteractionEvent]:
        return [event for bucket in self.buckets for event in bucket]


@dataclass
class IngestSummary:
    """Summary statistics of a contribution log."""

    num_records: int
    contributors: List[str]
    packages: List[str]
    num_classes: int
    num_commits: int
    interval_counts: Dict[str, int] = field(default_factory=dict)
    out_of_range: int = 0
    malformed: int = 0


def _unique(values) -> List[str]:
    return list(dict.fromkeys(values))


def subtask_id(record: ContributionRecord, qualify: bool = False) -> str:
    """Subtask id of a record's class, prefixed by its package if qualified."""

    if qualify:
        return f'{record.package}/{record.class_name}'

    return record.class_name


def to_events(records: Sequence[ContributionRecord], qualify: bool = False) -> List[InteractionEvent]:
    """Interaction events of contribution records; packages become tasks, classes subtasks.

    Class names repeat across packages, so subtask ids must be qualified
    whenever the events span several packages.
    """

    events = []
    for r in records:
        events.append(validate_event(InteractionEvent(timestamp=r.timestamp,
                                                      agent_id=r.contributor,
                                                      task_id=r.package,
                                                      subtask_id=subtask_id(r, qualify),
                                                      lines_added=r.lines_added,
                                                      lines_deleted=r.lines_deleted,
                                                      commit_id=r.commit_id)))

    return events


def hierarchy_from_records(records: Sequence[ContributionRecord],
                           goal_id: str,
                           intervals: Sequence,
                           qualify: bool = False) -> TaskHierarchy:
    """Task hierarchy of the packages and classes seen in the records, in first-seen order."""

    subtasks = defaultdict(list)
    for record in records:
        sid = subtask_id(record, qualify)
        if sid not in subtasks[record.package]:
            subtasks[record.package].append(sid)

    return build_hierarchy(goal_id, list(subtasks.items()), intervals)


def subgroup_filter(records: Sequence[ContributionRecord], agent_ids: Sequence[str]) -> List[ContributionRecord]:
    """Records authored by the listed agents.

    Agents of the subgroup with no records are reported as warnings.
    """

    if not agent_ids:
        raise ValidationError('subgroup must list at least one agent', field='subgroup', stage='ingest')

    logger = logging.getLogger('timestamp')

    for agent_id in missing_agents(records, agent_ids):
        logger.warning(f'Subgroup agent {agent_id} has no contribution records.')

    selected = set(agent_ids)

    return [record for record in records if record.contributor in selected]


def missing_agents(records: Sequence[ContributionRecord], agent_ids: Sequence[str]) -> List[str]:
    """Listed agents that authored none of the records."""

    contributors = {record.contributor for record in records}

    return [agent_id for agent_id in agent_ids if agent_id not in contributors]


def bucket_events(events: Sequence[InteractionEvent], hierarchy: TaskHierarchy) -> BucketedEvents:
    """Assign each event to the interval containing its timestamp.

    Events outside every interval are tallied as out of range.
    """

    bucketed = BucketedEvents(buckets=[[] for _ in hierarchy.intervals])
    for event in events:
        idx = hierarchy.interval_index(event.timestamp)
        if idx is None:
            bucketed.out_of_range += 1
        else:
            bucketed.buckets[idx].append(event)

    return bucketed


def derive_links(events: Sequence[InteractionEvent],
                 hierarchy: TaskHierarchy,
                 interval_idx: int) -> List[LinkState]:
    """Explicit links between contributors who changed a common class within an interval.

    Parameters
    ----------
    events : list[InteractionEvent]
        Events of one interval.
    hierarchy : TaskHierarchy
        Hierarchy the events are mapped on.
    interval_idx : int
        Index of the interval the events belong to.

    Returns
    -------
    list[LinkState]
        For each class and each ordered pair (i, j) of distinct
        contributors to it, a link from i to j valued at the lines i
        added and deleted in the class.
    """

    interval: Interval = hierarchy.intervals[interval_idx]

    events_by_class = defaultdict(lambda: defaultdict(list))
    for event in events:
        events_by_class[(event.task_id, event.subtask_id)][event.agent_id].append(event)

    links = []
    for task_id in hierarchy.tasks:
        for subtask_id in hierarchy.subtasks[task_id]:
            contributors = events_by_class.get((task_id, subtask_id))
            if not contributors or len(contributors) < 2:
                continue

            agents = sorted(contributors)
            for source in agents:
                for target in agents:
                    if source == target:
                        continue
                    link = LinkState(source=source, target=target, subtask_id=subtask_id)
                    links.append(accumulate_explicit(link, contributors[source], interval))

    return links


def summarize(records: Sequence[ContributionRecord],
              hierarchy: TaskHierarchy,
              malformed: int = 0) -> IngestSummary:
    """Summary of a contribution log over the intervals of a hierarchy."""

    bucketed = bucket_events(to_events(records), hierarchy)

    return IngestSummary(num_records=len(records),
                         contributors=_unique(r.contributor for r in records),
                         packages=_unique(r.package for r in records),
                         num_classes=len(Counter((r.package, r.class_name) for r in records)),
                         num_commits=len({r.commit_id for r in records}),
                         interval_counts={interval.label: len(bucket)
                                          for interval, bucket in zip(hierarchy.intervals, bucketed.buckets)},
                         out_of_range=bucketed.out_of_range,
                         malformed=malformed)
