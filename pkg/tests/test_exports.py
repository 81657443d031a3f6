import os

import numpy as np
import pytest

from camp_locomotion import ClipFormatError, MissingRunError
from camp_locomotion.analysis.contacts import ContactMetrics
from camp_locomotion.analysis.exports import (
    read_cluster_assignments,
    read_dtw_matrix,
    read_projection,
    write_cluster_assignments,
    write_contact_table,
    write_dtw_matrix,
    write_projection,
)


class TestExports:
    names = ['trot_2Hz', 'pace_2Hz', 'bound_2Hz']
    labels = [0, 0, 2, 4]
    purity = 0.75

    @pytest.fixture
    def matrix(self):
        return np.array([[0.0, 1.5, 2.25], [1.5, 0.0, 1 / 3], [2.25, 1 / 3, 0.0]])

    def test_dtw_matrix(self, tmp_path, matrix):
        path = str(tmp_path / 'dtw.csv')
        write_dtw_matrix(path, self.names, matrix)

        names, loaded = read_dtw_matrix(path)

        assert names == self.names
        assert np.array_equal(loaded, matrix)
        with open(path, encoding='utf-8') as f:
            assert f.readline() == '# camp-dtw format_version=1\n'

    def test_dtw_shape_mismatch(self, tmp_path, matrix):
        with pytest.raises(ClipFormatError):
            write_dtw_matrix(str(tmp_path / 'dtw.csv'), self.names[:2], matrix)

    def test_cluster_assignments(self, tmp_path):
        path = str(tmp_path / 'clusters.csv')
        write_cluster_assignments(path, self.labels, np.array([1, 1, 1, 0]), self.purity)

        labels, clusters, purity = read_cluster_assignments(path)

        assert labels.tolist() == self.labels
        assert clusters.tolist() == [1, 1, 1, 0]
        assert purity == self.purity
        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()
        assert lines[0] == '# camp-clusters format_version=1 purity=0.75'
        assert lines[1] == 'index,label,skill_name,cluster'
        assert lines[4] == '2,2,pace_2Hz,1'

    def test_projection(self, tmp_path):
        path = str(tmp_path / 'projection.csv')
        coordinates = np.array([[0.1, -0.2], [1.0, 2.0], [-3.5, 0.0], [0.0, 1e-9]])
        write_projection(path, self.labels, coordinates, np.array([2.0, 0.5]))

        labels, loaded = read_projection(path)

        assert labels.tolist() == self.labels
        assert np.array_equal(loaded, coordinates)
        with open(path, encoding='utf-8') as f:
            assert f.readline() == '# camp-projection format_version=1 explained_variance=2.0;0.5\n'
            assert f.readline().strip() == 'index,label,skill_name,pc1,pc2'

    def test_contact_table(self, tmp_path):
        path = str(tmp_path / 'contacts.csv')
        metrics = ContactMetrics(duty_factors=np.full(4, 0.5), phase_offsets=np.array([0.0, 0.5, 0.5, 0.0]))
        write_contact_table(path, [('expert', 0, metrics), ('policy', 0, metrics)])

        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()

        assert lines[0] == '# camp-contacts format_version=1'
        assert lines[1] == (
            'source,label,skill_name,duty_FL,duty_FR,duty_RL,duty_RR,offset_FL,offset_FR,offset_RL,offset_RR'
        )
        assert lines[2] == 'expert,0,trot_2Hz,0.5,0.5,0.5,0.5,0.0,0.5,0.5,0.0'
        assert len(lines) == 4

    def test_wrong_kind(self, tmp_path, matrix):
        path = str(tmp_path / 'dtw.csv')
        write_dtw_matrix(path, self.names, matrix)

        with pytest.raises(ClipFormatError):
            read_projection(path)

    def test_wrong_version(self, tmp_path):
        path = str(tmp_path / 'clusters.csv')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('# camp-clusters format_version=2 purity=1.0\nindex,label,skill_name,cluster\n')

        with pytest.raises(ClipFormatError):
            read_cluster_assignments(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingRunError):
            read_dtw_matrix(os.path.join(str(tmp_path), 'absent.csv'))
