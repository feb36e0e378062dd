"""Pure-Python reference implementation of the n-gram kernels."""


def token_ngram_stats(hyp, ref, max_n):
    """Clipped n-gram match statistics for one hypothesis/reference pair.

    Returns a list of (matches, total) per order n = 1..max_n, where
    ``matches`` is the clipped count of hypothesis n-grams also present in
    the reference and ``total`` is the number of hypothesis n-grams.
    """
    out = []
    for n in range(1, max_n + 1):
        hyp_counts = _count_token_ngrams(hyp, n)
        ref_counts = _count_token_ngrams(ref, n)
        matches = 0
        total = 0
        for gram, cnt in hyp_counts.items():
            total += cnt
            rc = ref_counts.get(gram, 0)
            matches += cnt if cnt < rc else rc
        out.append((matches, total))
    return out


def char_ngram_match_stats(hyp, ref, max_n):
    """Character n-gram overlap statistics for one pair of strings.

    Returns a list of (hyp_total, ref_total, matches) per order
    n = 1..max_n; matches are clipped to the minimum of the two counts.
    """
    out = []
    for n in range(1, max_n + 1):
        hyp_counts = count_char_ngrams(hyp, n)
        ref_counts = count_char_ngrams(ref, n)
        matches = 0
        hyp_total = 0
        for gram, cnt in hyp_counts.items():
            hyp_total += cnt
            rc = ref_counts.get(gram, 0)
            matches += cnt if cnt < rc else rc
        ref_total = sum(ref_counts.values())
        out.append((hyp_total, ref_total, matches))
    return out


def count_char_ngrams(text, n):
    """Count all character n-grams of ``text`` into a dict."""
    counts = {}
    for i in range(len(text) - n + 1):
        gram = text[i : i + n]
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def _count_token_ngrams(tokens, n):
    counts = {}
    for i in range(len(tokens) - n + 1):
        gram = tuple(tokens[i : i + n])
        counts[gram] = counts.get(gram, 0) + 1
    return counts
