"""Pure-Python trace-trie builder; same contract as the compiled ``_kernel``."""


def trace_trie(offsets, act, tgt, ext, sigid, starts, depth, nsig, actions_only):
    """Breadth-first search over (state, trie node) pairs.

    Every trie node is a distinct trace reachable within ``depth`` transitions.
    A node's symbol is ``(action + 1) * nsig + sig`` for an external step and
    ``sig`` alone for a signature change (``actions_only`` drops signatures:
    the symbol is ``action + 1`` and the root symbol is 0). Returns the
    parallel lists ``(parent, symbol)``; roots have parent -1.
    """
    parent = []
    symbol = []
    last_sig = []
    children = {}
    roots = {}
    frontier = []
    seen = set()
    for s in starts:
        sym = 0 if actions_only else sigid[s]
        node = roots.get(sym)
        if node is None:
            node = len(parent)
            roots[sym] = node
            parent.append(-1)
            symbol.append(sym)
            last_sig.append(sigid[s])
        if (s, node) not in seen:
            seen.add((s, node))
            frontier.append((s, node))
    for _ in range(depth):
        nxt = []
        for s, node in frontier:
            for e in range(offsets[s], offsets[s + 1]):
                t = tgt[e]
                if ext[e]:
                    sym = act[e] + 1 if actions_only else (act[e] + 1) * nsig + sigid[t]
                elif actions_only or sigid[t] == last_sig[node]:
                    sym = -1
                else:
                    sym = sigid[t]
                if sym < 0:
                    child = node
                else:
                    key = (node, sym)
                    child = children.get(key)
                    if child is None:
                        child = len(parent)
                        children[key] = child
                        parent.append(node)
                        symbol.append(sym)
                        last_sig.append(sigid[t])
                pair = (t, child)
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
        frontier = nxt
        if not frontier:
            break
    return parent, symbol
