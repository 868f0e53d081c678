"""
Measure the social capital of a subgroup from a contribution log.
"""

import logging
from typing import Dict, List, Optional, Tuple

from social_capital.capital_engine import (BeliefMode,
                                           CapitalEngine,
                                           capacity,
                                           capacity_from_commits,
                                           hop_distances,
                                           net_sc)
from social_capital.event_io import ContributionRecord, ParseStats, read_log
from social_capital.exceptions import ConfigError, NoDataError, SocialCapitalError, ValidationError
from social_capital.ingest import (IngestSummary,
                                   bucket_events,
                                   derive_links,
                                   hierarchy_from_records,
                                   subgroup_filter,
                                   summarize,
                                   to_events)
from social_capital.link_engine import IntervalLinks, LinkEngine
from social_capital.model import ExplainRecord, LinkKind, ReportRow, SCReport, TaskHierarchy
from social_capital.run_config import RunConfig


class SCPipeline():
    """Measure the social capital of a subgroup from a contribution log."""

    def __init__(self):
        """Initialization."""

        self.logger = logging.getLogger('timestamp')

    def read_records(self, config: RunConfig) -> Tuple[List[ContributionRecord], ParseStats]:
        """Read and tally the records of the configured input."""

        stats = ParseStats()
        try:
            records = read_log(config.input, config.strict, stats)
        except FileNotFoundError as e:
            raise ConfigError(str(e))

        self.logger.info(f' - records read = {stats.records:,}')
        if stats.skipped:
            self.logger.warning(f' - malformed lines skipped = {stats.skipped:,}')

        return records, stats

    def select_task(self, records: List[ContributionRecord], task: Optional[str]) -> Tuple[str, List[ContributionRecord]]:
        """Restrict records to a single task (package)."""

        packages = list(dict.fromkeys(r.package for r in records))
        if task is None:
            if len(packages) > 1:
                raise ConfigError(f'input holds {len(packages)} packages; select one with --task: {", ".join(packages)}')
            task = packages[0]
        elif task not in packages:
            raise ConfigError(f'task {task} not found in input')

        return task, [r for r in records if r.package == task]

    def ingest(self, config: RunConfig) -> IngestSummary:
        """Validate and summarize the configured input."""

        records, stats = self.read_records(config)
        try:
            hierarchy = hierarchy_from_records(records, config.goal, config.intervals, qualify=True) if records else None
        except ValidationError as e:
            e.stage = 'ingest'
            raise

        if hierarchy is None:
            raise NoDataError('no data')

        return summarize(records, hierarchy, malformed=stats.skipped)

    def _capacities(self, config: RunConfig, task_id: str, agents: List[str], events) -> Dict[str, float]:
        capacities = {}
        for agent_id in agents:
            if config.capacity_source == 'profile':
                profile = config.profiles.get(agent_id)
                if profile is None:
                    raise ConfigError(f'no profile for agent {agent_id}')
                capacities[agent_id] = capacity(profile.capability_for(task_id),
                                                profile.willingness_for(task_id),
                                                profile.availability_for(task_id))
            else:
                capacities[agent_id] = float(capacity_from_commits(events, agent_id))

        return capacities

    def _explain(self, label: str, links: IntervalLinks, capital_rows) -> List[ExplainRecord]:
        records = []
        for kind in (LinkKind.EXPLICIT, LinkKind.IMPLICIT):
            for link in links.graph.links(kind=kind):
                records.append(ExplainRecord(label, kind.value, link.subtask_id, link.source, link.target, link.value))

        for link in links.promoted:
            records.append(ExplainRecord(label, 'promoted', link.subtask_id, link.source, link.target, link.value))

        for (source, target), value in links.relations.items():
            records.append(ExplainRecord(label, 'relation', '', source, target, value))

        for row in capital_rows:
            computed = links.agent_relations.get(row.agent_id, 0.0)
            records.append(ExplainRecord(label, 'agent_relation', '', row.agent_id, '', computed))
            if row.relation != computed:
                records.append(ExplainRecord(label, 'pinned_relation', '', row.agent_id, '', row.relation))
            records.append(ExplainRecord(label, 'capacity', '', row.agent_id, '', row.capacity))
            records.append(ExplainRecord(label, 'benevolence', '', row.agent_id, '', row.benevolence))
            records.append(ExplainRecord(label, 'pbenevolence', '', row.agent_id, '', row.potential_benevolence))

        return records

    def run(self, config: RunConfig) -> SCReport:
        """Measure social capital per interval and agent.

        Parameters
        ----------
        config : RunConfig
            Validated run configuration.

        Returns
        -------
        SCReport
            One row per interval and active agent; empty if no records
            fall within the configured intervals.
        """

        self.logger.info('Reading contribution log:')
        records, _stats = self.read_records(config)
        if not records:
            self.logger.warning('No contribution records in input.')
            return SCReport(task_id=config.task or '')

        task_id, records = self.select_task(records, config.task)
        self.logger.info(f' - task = {task_id}')

        if config.subgroup:
            records = subgroup_filter(records, config.subgroup)
            self.logger.info(f' - subgroup records = {len(records):,}')

        if not records:
            return SCReport(task_id=task_id)

        try:
            hierarchy: TaskHierarchy = hierarchy_from_records(records, config.goal, config.intervals)
        except ValidationError as e:
            e.stage = 'core-model'
            raise

        bucketed = bucket_events(to_events(records), hierarchy)
        self.logger.info(f' - events within intervals = {bucketed.in_range:,}')
        if bucketed.out_of_range:
            self.logger.info(f' - events outside intervals = {bucketed.out_of_range:,}')

        report = SCReport(task_id=task_id, intervals=[interval.label for interval in hierarchy.intervals])
        if bucketed.in_range == 0:
            return report

        if config.subgroup:
            active = {event.agent_id for event in bucketed.all_events()}
            agents = [agent_id for agent_id in config.subgroup if agent_id in active]
        else:
            agents = list(dict.fromkeys(event.agent_id for event in bucketed.all_events()))

        capacities = self._capacities(config, task_id, agents, bucketed.all_events())

        link_engine = LinkEngine(config.tau, config.carry_links, config.max_path_hops)
        capital_engine = CapitalEngine(config.belief_config())

        previous = None
        accumulated = {}
        for idx, (interval, events) in enumerate(zip(hierarchy.intervals, bucketed.buckets)):
            self.logger.info(f'Measuring interval {interval.label} [{interval.start}, {interval.end}):')

            stage = 'link-engine'
            try:
                links = link_engine.process_interval(task_id,
                                                     interval,
                                                     derive_links(events, hierarchy, idx),
                                                     previous)
                previous = links
                for key, count in links.diagnostics.items():
                    self.logger.info(f' - {key.replace("_", " ")} = {count:,}')

                active = {event.agent_id for event in events}
                relations = {}
                for agent_id in agents:
                    if agent_id not in active:
                        continue
                    relation = links.agent_relations.get(agent_id, 0.0)
                    pinned = config.pinned_relations.get(interval.label, {}).get(agent_id)
                    if pinned is not None:
                        self.logger.info(f' - relation of {agent_id} pinned to {pinned} (computed {relation})')
                        relation = pinned
                    relations[agent_id] = relation

                if not relations:
                    report.diagnostics[interval.label] = links.diagnostics
                    continue

                stage = 'capital-engine'
                hops = None
                if capital_engine.belief.mode == BeliefMode.EXPONENTIAL:
                    hops = hop_distances(links.graph.union_digraph(), list(relations))

                rows = capital_engine.measure_interval(task_id, idx, relations, capacities, accumulated, hops)
                interval_net = net_sc(rows, accumulative=config.net_mode == 'accumulative')
            except SocialCapitalError as e:
                e.stage = stage
                raise

            for row in rows:
                accumulated[row.agent_id] = row.accumulative_sc
                report.rows.append(ReportRow(interval=interval.label,
                                             agent_id=row.agent_id,
                                             links=links.agent_links.get(row.agent_id, 0.0),
                                             relation=row.relation,
                                             capacity=row.capacity,
                                             benevolence=row.benevolence,
                                             potential_benevolence=row.potential_benevolence,
                                             instant_sc=row.instant_sc,
                                             accumulative_sc=row.accumulative_sc,
                                             net_sc=interval_net))

            report.net_sc[interval.label] = interval_net
            report.diagnostics[interval.label] = links.diagnostics
            report.explain.extend(self._explain(interval.label, links, rows))
            self.logger.info(f' - net SC = {interval_net:.3f}')

        return report


def run_pipeline(config: RunConfig) -> SCReport:
    """Measure social capital for a validated run configuration."""

    return SCPipeline().run(config)
