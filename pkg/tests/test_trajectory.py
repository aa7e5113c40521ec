import numpy as np
import pytest

from jtmkit import (
    SkeletonSequence,
    compute_trajectories,
    joint_speed,
    layout_from_names,
)

LAYOUT2 = layout_from_names(["left_hand", "right_hand"])


def seq_of(frames):
    frames = np.asarray(frames, dtype=np.float64)
    m = frames.shape[1]
    layout = layout_from_names([f"right_j{i}" for i in range(m)])
    return SkeletonSequence(layout=layout, frames=frames)


class TestJointSpeed:
    def test_zero(self):
        assert joint_speed((0, 0, 0), (0, 0, 0)) == 0.0

    def test_three_four_five(self):
        assert joint_speed((1, 2, 2), (0, 0, 0)) == 3.0

    def test_sign_symmetry(self):
        assert joint_speed((-1, 0, 0), (1, 0, 0)) == 2.0
        assert joint_speed((1, 0, 0), (-1, 0, 0)) == 2.0


class TestComputeTrajectories:
    def test_single_moving_joint(self):
        traj = compute_trajectories(seq_of([[(0, 0, 0)], [(1, 2, 2)]]))
        assert np.array_equal(traj.deltas[0, 0], [1.0, 2.0, 2.0])
        assert traj.speeds[0, 0] == 3.0
        assert traj.v_max == 3.0
        assert np.array_equal(traj.start_points[0, 0], [0.0, 0.0, 0.0])

    def test_static(self):
        traj = compute_trajectories(seq_of([[(1, 2, 3)]] * 4))
        assert not traj.deltas.any()
        assert traj.v_max == 0.0

    def test_step_count(self):
        traj = compute_trajectories(seq_of([[(i, 0, 0)] for i in range(5)]))
        assert len(traj) == 4
        assert [s.step_index for s in traj.steps] == [1, 2, 3, 4]

    def test_step_contents(self):
        traj = compute_trajectories(seq_of([[(0, 0, 0)], [(1, 0, 0)], [(1, 1, 0)]]))
        step = traj[1]
        assert step.step_index == 2
        assert np.array_equal(step.deltas[0], [0.0, 1.0, 0.0])
        assert np.array_equal(step.start_points[0], [1.0, 0.0, 0.0])
        assert step.speeds[0] == 1.0

    def test_speeds_match_norms(self):
        rng = np.random.default_rng(3)
        frames = rng.normal(size=(6, 4, 3))
        traj = compute_trajectories(seq_of(frames))
        norms = np.linalg.norm(traj.deltas, axis=2)
        assert np.allclose(traj.speeds, norms, rtol=1e-15, atol=0.0)
        assert traj.v_max >= traj.speeds.max()


class TestInvariances:
    def make(self, rng, n=6, m=3):
        return rng.integers(-2048, 2048, size=(n, m, 3)).astype(np.float64) / 64.0

    def test_translation_bit_exact(self):
        rng = np.random.default_rng(11)
        frames = self.make(rng)
        offset = np.array([17.0, -9.0, 1024.0])
        a = compute_trajectories(seq_of(frames))
        b = compute_trajectories(seq_of(frames + offset))
        assert a.deltas.tobytes() == b.deltas.tobytes()
        assert a.speeds.tobytes() == b.speeds.tobytes()
        assert a.v_max == b.v_max

    def test_reversal_antisymmetry(self):
        rng = np.random.default_rng(12)
        frames = rng.normal(size=(5, 2, 3))
        fwd = compute_trajectories(seq_of(frames))
        rev = compute_trajectories(seq_of(frames[::-1]))
        assert np.array_equal(rev.deltas, -fwd.deltas[::-1])
        assert np.array_equal(rev.speeds, fwd.speeds[::-1])
        assert rev.v_max == fwd.v_max

    def test_scaling_covariance(self):
        rng = np.random.default_rng(13)
        frames = rng.normal(size=(5, 2, 3))
        s = 3.7
        a = compute_trajectories(seq_of(frames))
        b = compute_trajectories(seq_of(frames * s))
        assert np.allclose(b.speeds, a.speeds * s, rtol=1e-9)
        assert b.v_max == pytest.approx(a.v_max * s, rel=1e-9)
