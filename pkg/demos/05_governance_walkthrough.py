"""A full governance lifecycle on the deterministic state machine.

Members stake tokens behind a timelock, propose, suggest, vote with
weight equal to the stake held past the debate end, and execute. Time
only moves when tick() is called, so the run below prints the same thing
every time.

Run:  python demos/05_governance_walkthrough.py
"""

from keycube import GovState, run_scenario

state = GovState()

state.mint("alice", 1000)
state.mint("bob", 400)
state.mint("treasury", 500)
print("minted:", state.balances)

# Staking makes an account a member; the stake also prices its vote.
state.lock_tokens("alice", 300, release_time=1000)
state.lock_tokens("bob", 100, release_time=1000)
state.lock_tokens("bob", 50, release_time=40)  # expires before the debate ends
print("members:", [a for a in state.balances if state.is_member(a)])

pid = state.submit_proposal("alice", "fund a relay node", debate_end=100,
                            transfer_to="carol", transfer_amount=120)
plan_a = state.submit_suggestion(pid, "alice", "rent rack space")
plan_b = state.submit_suggestion(pid, "bob", "use a home server")

print("alice votes with weight", state.vote(pid, plan_a, "alice"))
print("bob votes with weight", state.vote(pid, plan_b, "bob"))  # 50 is short-locked

state.tick(100)
winner = state.execute_proposal(pid)
print("winner suggestion:", winner, "-> treasury pays carol")
print("balances:", state.balances)
print("supply conserved:", state.conserved())

# The same mechanics drive scenario files (see `keycube dao --scenario`).
scenario = [
    "mint dana 200",
    "lock dana 200 500",
    "propose dana 50 adjust crawl interval",
    "suggest 1 dana every 6 hours",
    "vote 1 0 dana",
    "tick 50",
    "execute 1",
]
final, log = run_scenario(scenario)
print("\nscenario log:")
for line in log:
    print(" ", line)
