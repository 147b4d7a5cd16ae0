"""What a symbol replacement costs a conventional receiver.

Two senders jointly describe four states with two binary vocabularies (think
"dress/suit" and "red/blue").  The conventional receiver keys its urns on the
full message pair, so when sender B swaps "red" for the unfamiliar "rouge",
every pair containing the new word starts from scratch: about one full bit of
transmitted information disappears, twice what a compositional reading of the
signals would lose.
"""

from signalgames import (
    ReplacementEvent,
    TrajectoryConfig,
    make_two_sender_game,
    run,
)
from signalgames.infotheory import (
    compositional_expected_average,
    info_table,
    receiver_average_info,
)

game = make_two_sender_game()
event = ReplacementEvent(turn=10_000, sender_index=1, old_symbol="mB0", new_symbol="mB?")
config = TrajectoryConfig(
    spec=game,
    receiver_kind="conventional",
    total_turns=20_000,
    events=(event,),
    snapshot_every=2000,
    seed=0,
)
trajectory = run(config)

pre = trajectory.event_snapshots[(event.turn, "pre")]
post = trajectory.event_snapshots[(event.turn, "post")]

print("pre-event information about acts:")
print(info_table(pre, rows="compound", cols="acts").to_csv())
print("post-event information about acts:")
print(info_table(post, rows="compound", cols="acts").to_csv())

actual = receiver_average_info(post)
expected = compositional_expected_average(pre, "mB0", "mB?")
print(f"average info before the event: {receiver_average_info(pre):.3f} bits")
print(f"average info after the event:  {actual:.3f} bits")
print(f"a compositional reading keeps: {expected:.3f} bits")
print(f"extra loss beyond compositional: {expected - actual:.3f} bits")
