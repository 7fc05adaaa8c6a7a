"""How many cops does a small graph need?

Walks through the pursuit-game solver on a few classic graphs, then plays
out the cops' strategy against a robber who always runs to the farthest
vertex.
"""
from copml.copwin import cop_number, is_dismantlable, is_k_copwin, solve_game
from copml.graph import bfs_distances, closed_neighborhood, cycle_graph, path_graph, petersen_graph

# Trees and other dismantlable graphs need one cop; cycles of length >= 4 need two.
for name, g in [("P5", path_graph(5)), ("C4", cycle_graph(4)), ("C7", cycle_graph(7))]:
    print(f"{name}: dismantlable={is_dismantlable(g)} cop number={cop_number(g)}")

# The Petersen graph is the smallest graph that needs three cops.
pet = petersen_graph()
for k in (2, 3):
    res = is_k_copwin(pet, k)
    print(f"Petersen with {k} cops: copwin={res.copwin} start={res.winning_placement} "
          f"({res.states_processed} states)")

# Replay: the solved table tells the cops where to go; the robber flees greedily.
table = solve_game(pet, 3)
cops = table.winning_placements()[0]
robber = max(range(pet.n), key=lambda v: min(bfs_distances(pet, c)[v] for c in cops))
print(f"cops start at {cops}, robber at {robber}")
for turn in range(1, 20):
    cops = table.cop_reply(cops, robber)
    print(f"  turn {turn}: cops -> {cops}")
    if robber in cops:
        print("  captured")
        break
    robber = max(sorted(closed_neighborhood(pet, robber)),
                 key=lambda v: min(bfs_distances(pet, c)[v] for c in cops))
    print(f"           robber -> {robber}")
    if robber in cops:
        print("  robber walked into a cop")
        break
