import numpy as np
import pytest

from camp_locomotion import EmptySelectionError
from camp_locomotion.analysis.dtw import dtw_distance, dtw_matrix


class TestDtw:
    a = [1.0, 2.0, 3.0]
    b = [2.0, 2.0, 2.0, 4.0]
    distance = 2.0

    def test_expected_values(self):
        assert dtw_distance(self.a, self.b) == pytest.approx(self.distance)

    def test_identical(self):
        assert dtw_distance(self.a, self.a) == 0.0

    def test_time_warp_is_free(self):
        assert dtw_distance([0.0, 0.0, 1.0], [0.0, 1.0, 1.0]) == 0.0

    def test_vectors(self):
        assert dtw_distance(np.array([[0.0, 0.0], [3.0, 4.0]]), np.array([[0.0, 0.0]])) == pytest.approx(5.0)

    def test_symmetric(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=(12, 3)), rng.normal(size=(17, 3))

        assert dtw_distance(a, b) == pytest.approx(dtw_distance(b, a))

    def test_brute_force(self):
        rng = np.random.default_rng(1)
        a, b = rng.normal(size=5), rng.normal(size=4)
        cost = np.abs(a[:, None] - b[None, :])
        table = np.full((6, 5), np.inf)
        table[0, 0] = 0.0
        for i in range(1, 6):
            for j in range(1, 5):
                table[i, j] = cost[i - 1, j - 1] + min(table[i - 1, j - 1], table[i - 1, j], table[i, j - 1])

        assert dtw_distance(a, b) == pytest.approx(table[5, 4])

    def test_empty(self):
        with pytest.raises(EmptySelectionError):
            dtw_distance([], [1.0])

    def test_matrix(self):
        rng = np.random.default_rng(2)
        sequences = [rng.normal(size=(length, 2)) for length in (5, 8, 6, 9)]

        matrix = dtw_matrix(sequences)

        assert matrix.shape == (4, 4)
        assert np.all(np.diag(matrix) == 0)
        assert np.array_equal(matrix, matrix.T)
        assert matrix[1, 3] == pytest.approx(dtw_distance(sequences[1], sequences[3]))
        assert np.array_equal(dtw_matrix(sequences, workers=3), matrix)

    def test_hand_table(self):
        assert dtw_distance([0.0, 1.0, 2.0], [0.0, 2.0]) == 1.0
