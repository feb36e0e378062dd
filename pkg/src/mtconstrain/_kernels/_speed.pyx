# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled n-gram counting kernels (same API as _pure)."""


def token_ngram_stats(list hyp, list ref, int max_n):
    cdef int n, i, cnt, rc
    cdef int matches, total
    cdef dict hyp_counts, ref_counts
    cdef list out = []
    for n in range(1, max_n + 1):
        hyp_counts = _count_token_ngrams(hyp, n)
        ref_counts = _count_token_ngrams(ref, n)
        matches = 0
        total = 0
        for gram, v in hyp_counts.items():
            cnt = v
            total += cnt
            rc = ref_counts.get(gram, 0)
            matches += cnt if cnt < rc else rc
        out.append((matches, total))
    return out


def char_ngram_match_stats(str hyp, str ref, int max_n):
    cdef int n, cnt, rc
    cdef int matches, hyp_total, ref_total
    cdef dict hyp_counts, ref_counts
    cdef list out = []
    for n in range(1, max_n + 1):
        hyp_counts = count_char_ngrams(hyp, n)
        ref_counts = count_char_ngrams(ref, n)
        matches = 0
        hyp_total = 0
        for gram, v in hyp_counts.items():
            cnt = v
            hyp_total += cnt
            rc = ref_counts.get(gram, 0)
            matches += cnt if cnt < rc else rc
        ref_total = 0
        for v in ref_counts.values():
            ref_total += <int> v
        out.append((hyp_total, ref_total, matches))
    return out


def count_char_ngrams(str text, int n):
    cdef dict counts = {}
    cdef int i
    cdef int limit = len(text) - n + 1
    cdef str gram
    for i in range(limit):
        gram = text[i : i + n]
        if gram in counts:
            counts[gram] = counts[gram] + 1
        else:
            counts[gram] = 1
    return counts


cdef dict _count_token_ngrams(list tokens, int n):
    cdef dict counts = {}
    cdef int i
    cdef int limit = len(tokens) - n + 1
    cdef tuple gram
    for i in range(limit):
        gram = tuple(tokens[i : i + n])
        if gram in counts:
            counts[gram] = counts[gram] + 1
        else:
            counts[gram] = 1
    return counts
