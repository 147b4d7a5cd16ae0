"""Information out of nothing: the atomic two-state signaling game.

A sender observes one of two states and picks a message by drawing from an
urn; the receiver picks an act the same way; both reinforce on success.
Starting from pure symmetry, the pair converges on one of the two possible
signaling systems, and the signals come to carry a full bit of information.
"""

from signalgames import TrajectoryConfig, make_atomic_game, run
from signalgames.infotheory import info_table
from signalgames.engine import take_snapshot

game = make_atomic_game(2)
config = TrajectoryConfig(spec=game, total_turns=10_000, snapshot_every=1000, seed=4)
trajectory = run(config)

print("turn    payoff   signal info (bits)")
for report in trajectory.reports:
    print(f"{report.turn:>6}  {report.expected_payoff:.3f}    {report.sender_info_bits:.3f}")

snapshot = take_snapshot(game, trajectory.senders, trajectory.receiver)
print("\ninformation carried by each message about the states:")
print(info_table(snapshot, rows="atomic", cols="states").to_csv())
