import os
import shutil

import numpy as np
import pytest

from camp_locomotion import AnalysisConfig
from camp_locomotion.analysis.ablation import (
    REPORT_FILE_NAME,
    AblationReport,
    AblationRow,
    SwitchResult,
    ablation_report,
    evaluate_run,
    render_ablation_table,
    write_ablation_report,
)
from camp_locomotion.motion.skills import PHASE_OFFSETS


@pytest.fixture(scope='module')
def short_analysis():
    return AnalysisConfig(evaluation_duration=2.0, switch_window=0.5)


class TestAblationRow:
    def test_switch_rate(self):
        row = AblationRow('full', 'runs/full', switches=[SwitchResult(0, 2, True), SwitchResult(2, 0, False)])

        assert row.switch_rate == 0.5
        assert AblationRow('full', 'runs/full').switch_rate == 0.0

    def test_title(self):
        assert AblationRow('baseline', 'runs/baseline').title == 'AMP baseline'
        assert AblationRow('full', 'runs/full').title == 'CAMP'
        assert AblationRow('custom', 'runs/custom').title == 'custom'


class TestRenderAblationTable:
    @pytest.fixture
    def rows(self):
        full = AblationRow(
            'full',
            'runs/full',
            signatures={0: np.array(PHASE_OFFSETS['trot']), 2: None},
            max_signature_distance=0.5,
            switches=[SwitchResult(0, 2, True), SwitchResult(2, 0, True)],
            multi_gait=True,
            switch=True,
        )
        return [full, AblationRow('baseline', 'runs/baseline', missing=True)]

    def test_expected_values(self, rows):
        lines = render_ablation_table(rows).splitlines()

        assert lines[0].split(' | ')[0].strip() == 'Method'
        assert [cell.strip() for cell in lines[0].split('|')] == [
            'Method',
            'Multi-gait',
            'Switch',
            'Max distance',
            'Switch rate',
            'Status',
        ]
        assert set(lines[1]) <= {'-', '+'}
        assert [cell.strip() for cell in lines[2].split('|')] == ['CAMP', 'Yes', 'Yes', '0.500', '1.00', 'ok']
        assert [cell.strip() for cell in lines[3].split('|')] == ['AMP baseline', '-', '-', '-', '-', 'missing']

    def test_signatures(self, rows):
        text = render_ablation_table(rows)

        assert 'CAMP signatures (FL, FR, RL, RR):' in text
        assert '  trot_2Hz: 0.000, 0.500, 0.500, 0.000' in text
        assert '  pace_2Hz: unmeasured' in text
        assert 'AMP baseline signatures' not in text

    def test_report(self, rows, tmp_path):
        report = AblationReport(rows)
        path = write_ablation_report(str(tmp_path), report)

        assert not report.complete
        assert os.path.basename(path) == REPORT_FILE_NAME
        with open(path, encoding='utf-8') as f:
            assert f.read() == report.render()


class TestEvaluateRun:
    @pytest.fixture(scope='class')
    def row(self, trained_run, short_analysis):
        return evaluate_run(trained_run, 'full', short_analysis)

    def test_structure(self, row, trained_run):
        assert row.run_dir == trained_run
        assert not row.missing
        assert sorted(row.signatures) == [0, 2]
        assert [(result.source, result.target) for result in row.switches] == [(0, 2), (2, 0)]
        assert isinstance(row.multi_gait, bool)
        assert isinstance(row.switch, bool)
        assert 0.0 <= row.switch_rate <= 1.0
        assert 0.0 <= row.max_signature_distance <= 0.5

    def test_switch_outcome_follows_distances(self, row):
        for result in row.switches:
            if result.distance_to_target is None:
                assert not result.success
            else:
                assert result.success == (result.distance_to_target < result.distance_to_source)

    def test_report_marks_missing_runs(self, trained_run, short_analysis, tmp_path):
        shutil.copytree(trained_run, str(tmp_path / 'full'))

        report = ablation_report(str(tmp_path), ['full', 'baseline'], short_analysis)

        assert [row.variant for row in report.rows] == ['full', 'baseline']
        assert not report.rows[0].missing
        assert report.rows[1].missing
        assert not report.complete
        assert report.render().splitlines()[3].rstrip().endswith('missing')
