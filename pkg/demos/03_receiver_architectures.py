"""Three receiver architectures reacting to the same replacement.

The conventional receiver keys urns on full message pairs; the generalist
also tracks every message sub-combination and can introduce a fresh symbol in
either an information-erasing or an information-preserving way.  On the same
shortened schedule, erasing loses about a bit while preserving loses only the
half bit the replaced message itself carried.
"""

from signalgames import ReplacementEvent, TrajectoryConfig, make_two_sender_game
from signalgames.engine import run_batch

game = make_two_sender_game()
event = ReplacementEvent(turn=10_000, sender_index=1, old_symbol="mB0", new_symbol="mB?")

settings = [
    ("conventional", dict(receiver_kind="conventional")),
    ("generalist / erasing", dict(receiver_kind="generalist", introduction_mode="erasing")),
    ("generalist / preserving", dict(receiver_kind="generalist", introduction_mode="preserving")),
]

print(f"{'receiver':<24} {'pre (bits)':>10} {'post (bits)':>11} {'drop':>6}")
for label, kwargs in settings:
    config = TrajectoryConfig(
        spec=game, total_turns=10_000, events=(event,), snapshot_every=10_000, seed=0, **kwargs
    )
    batch = run_batch(config, 5)
    pre = batch.aggregate_row(event.turn, "pre").mean_receiver_info
    post = batch.aggregate_row(event.turn, "post").mean_receiver_info
    print(f"{label:<24} {pre:>10.3f} {post:>11.3f} {pre - post:>6.3f}")

print(
    "\nThe minimalist receiver (per-message urns + tempered softmax) behaves"
    "\nlike the preserving generalist once a signaling system is in place:"
    "\nonly the replaced message's own half bit is lost.  See"
    "\n04_information_tables.py for its converged-table version."
)
