#!/usr/bin/env python3
"""Brute-force reference for the end-to-end STS evaluation.

Recomputes, from first principles and independently of the C++ code,
the Pearson correlation of a semeval-format pair file against gold
scores, using locally fitted entropy weights:

  idf(w)  = ln(N_S / N_w)        (document frequency over all sentences)
  tf(w,s) = f_ws / F             (or binary / log variants)
  weight  = tf * idf
  s_vec   = sum_w weight(w, s) * x_w   over unique tokens with embeddings
  score   = cosine / -euclidean / -manhattan
  rho     = Pearson(score, gold)

Usage: brute_force_eval.py EMB PAIRS GOLD [--metric M] [--tf MODE]
       [--comb sum|avg] [--weights unweighted|idf|tfidf]
"""

import argparse
import math
import re
import struct
import sys


def f32(value):
    """Embedding files hold single-precision values; arithmetic is double."""
    return struct.unpack("f", struct.pack("f", value))[0]


def tokenize(text):
    return [t.lower() for t in re.findall(r"[0-9A-Za-z]+", text) if t]


def load_embeddings(path):
    table = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) == 3 and parts[1].isdigit() and parts[2].isdigit():
                continue  # header
            table[parts[0]] = [f32(float(v)) for v in parts[1:]]
    return table


def tf(token, sentence, mode, total_tokens):
    f = sentence.count(token)
    if mode == "binary":
        return (1.0 / total_tokens) if f > 0 else 0.0
    if mode == "log":
        return math.log(f + 1) / total_tokens
    return f / total_tokens


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("embeddings")
    ap.add_argument("pairs")
    ap.add_argument("gold")
    ap.add_argument("--metric", default="cosine",
                    choices=["cosine", "euclidean", "manhattan"])
    ap.add_argument("--tf", default="frequency",
                    choices=["binary", "frequency", "log"])
    ap.add_argument("--comb", default="sum", choices=["sum", "avg"])
    ap.add_argument("--weights", default="tfidf",
                    choices=["unweighted", "idf", "tfidf"])
    args = ap.parse_args()

    table = load_embeddings(args.embeddings)
    with open(args.pairs, encoding="utf-8") as fh:
        pairs = [line.rstrip("\n").split("\t") for line in fh if line.strip()]
    with open(args.gold, encoding="utf-8") as fh:
        gold = [float(line) for line in fh if line.strip()]
    assert len(pairs) == len(gold)

    # Local fit: every sentence side is one document.
    docs = [tokenize(s) for pair in pairs for s in pair]
    n_s = len(docs)
    total = sum(len(d) for d in docs)
    df = {}
    for doc in docs:
        for token in set(doc):
            df[token] = df.get(token, 0) + 1

    def idf(token):
        return math.log(n_s / df.get(token, 1))

    def embed(sentence):
        vec = None
        contributing = 0
        seen = set()
        for token in sentence:
            if token in seen:
                continue
            seen.add(token)
            if token not in table:
                continue
            if args.weights == "unweighted":
                w = 1.0
            elif args.weights == "idf":
                w = idf(token)
            else:
                w = tf(token, sentence, args.tf, total) * idf(token)
            row = table[token]
            if vec is None:
                vec = [0.0] * len(row)
            for k, x in enumerate(row):
                vec[k] += w * x
            contributing += 1
        if vec is None:
            return None, 0
        if args.comb == "avg" and contributing:
            vec = [v / contributing for v in vec]
        return vec, contributing

    def similarity(u, v):
        if args.metric == "cosine":
            nu = math.sqrt(sum(x * x for x in u))
            nv = math.sqrt(sum(x * x for x in v))
            if nu == 0 or nv == 0:
                return 0.0
            return sum(a * b for a, b in zip(u, v)) / (nu * nv)
        if args.metric == "euclidean":
            return -math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))
        return -sum(abs(a - b) for a, b in zip(u, v))

    predicted = []
    for a, b in pairs:
        va, ca = embed(tokenize(a))
        vb, cb = embed(tokenize(b))
        if va is None or vb is None or ca == 0 or cb == 0:
            predicted.append(0.0)
        else:
            predicted.append(similarity(va, vb))

    n = len(predicted)
    mx = sum(predicted) / n
    my = sum(gold) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(predicted, gold))
    sxx = sum((x - mx) ** 2 for x in predicted)
    syy = sum((y - my) ** 2 for y in gold)
    rho = sxy / math.sqrt(sxx * syy)
    print(f"{rho:.15f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
