# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled trace-trie builder; see ``_pykernel.trace_trie`` for the contract."""

from libcpp.pair cimport pair
from libcpp.vector cimport vector

cdef extern from *:
    """
    #include <cstdint>
    #include <vector>

    // Open-addressing map from non-negative 64-bit keys to longs.
    struct FlatTable {
        std::vector<long long> keys;
        std::vector<long> values;
        size_t mask = 0, used = 0;

        FlatTable() { rehash(1 << 12); }

        static inline uint64_t mix(uint64_t x) {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        void rehash(size_t cap) {
            std::vector<long long> old_keys;
            std::vector<long> old_values;
            old_keys.swap(keys);
            old_values.swap(values);
            keys.assign(cap, -1);
            values.assign(cap, 0);
            mask = cap - 1;
            used = 0;
            for (size_t i = 0; i < old_keys.size(); ++i)
                if (old_keys[i] >= 0) insert(old_keys[i], old_values[i]);
        }

        // Value stored under key, inserting ``value`` first if absent.
        // ``fresh`` reports whether the insertion happened.
        long insert(long long key, long value, int *fresh = nullptr) {
            if ((used + 1) * 2 > keys.size()) rehash(keys.size() * 2);
            size_t i = mix((uint64_t)key) & mask;
            while (keys[i] >= 0) {
                if (keys[i] == key) {
                    if (fresh) *fresh = 0;
                    return values[i];
                }
                i = (i + 1) & mask;
            }
            keys[i] = key;
            values[i] = value;
            ++used;
            if (fresh) *fresh = 1;
            return value;
        }
    };
    """
    cdef cppclass FlatTable:
        FlatTable()
        long insert(long long key, long value, int *fresh)


def trace_trie(offsets, act, tgt, ext, sigid, starts, long depth, long nsig, bint actions_only):
    cdef vector[long] c_off = offsets
    cdef vector[long] c_act = act
    cdef vector[long] c_tgt = tgt
    cdef vector[char] c_ext = [1 if x else 0 for x in ext]
    cdef vector[long] c_sig = sigid
    cdef long n = len(sigid)
    cdef vector[long] parent
    cdef vector[long] symbol
    cdef vector[long] last_sig
    cdef FlatTable children
    cdef FlatTable roots
    cdef FlatTable seen
    cdef vector[pair[long, long]] frontier
    cdef vector[pair[long, long]] nxt
    cdef long s, t, node, child, sym, e, layer, top = 0
    cdef long long key
    cdef long long width
    cdef size_t idx
    cdef int fresh = 0

    for e in range(c_act.size()):
        if c_act[e] > top:
            top = c_act[e]
    # symbols are bounded by (max action + 2) * nsig
    width = (top + 2) * (nsig + 1) + 1
    for s in starts:
        sym = 0 if actions_only else c_sig[s]
        node = roots.insert(sym, parent.size(), &fresh)
        if fresh:
            parent.push_back(-1)
            symbol.push_back(sym)
            last_sig.push_back(c_sig[s])
        seen.insert(<long long>node * n + s, 0, &fresh)
        if fresh:
            frontier.push_back(pair[long, long](s, node))
    for layer in range(depth):
        nxt.clear()
        for idx in range(frontier.size()):
            s = frontier[idx].first
            node = frontier[idx].second
            for e in range(c_off[s], c_off[s + 1]):
                t = c_tgt[e]
                if c_ext[e]:
                    if actions_only:
                        sym = c_act[e] + 1
                    else:
                        sym = (c_act[e] + 1) * nsig + c_sig[t]
                elif actions_only or c_sig[t] == last_sig[node]:
                    sym = -1
                else:
                    sym = c_sig[t]
                if sym < 0:
                    child = node
                else:
                    key = <long long>node * width + sym
                    child = children.insert(key, parent.size(), &fresh)
                    if fresh:
                        parent.push_back(node)
                        symbol.push_back(sym)
                        last_sig.push_back(c_sig[t])
                seen.insert(<long long>child * n + t, 0, &fresh)
                if fresh:
                    nxt.push_back(pair[long, long](t, child))
        frontier.swap(nxt)
        if frontier.size() == 0:
            break
    return list(parent), list(symbol)
