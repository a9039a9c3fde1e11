#!/usr/bin/env python3
"""Builds the bundled benchmark files under data/.

Sources (both available offline through the package mirrors):
  * KEEL tabular sets from the `keel_ds` wheel (pip install keel_ds)
  * MNIST IDX files from the `mnist-data` npm tarball (npm pack mnist-data)

Binary sets are written as CSV with a `label` column in {-1,+1}.  MNIST is
written as gzipped LIBSVM with labels digit+1 (1..10) and pixels scaled to
[0,1].  Multi-label sets (Emotions, Yeast, Scene) are not redistributed by
either source; drop `emotions.csv` / `yeast.csv` into data/ by hand (see
README) to enable the multi-label experiments.
"""

import argparse
import gzip
import os
import random
import struct

import keel_ds

BINARY_SETS = {
    "monk2": "monk-2",
    "australian": "australian",
    "phoneme": "phoneme",
    "titanic": "titanic",
    "splice": "splice",
}

NUCLEOTIDE = {"A": 1, "C": 2, "G": 3, "T": 4}


def keel_rows(name):
    path = os.path.join(os.path.dirname(keel_ds.__file__), "data", "balanced",
                        "raw", name + ".dat")
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield [c.strip() for c in line.split(",")]


def binary_label(name, raw):
    if name == "splice":
        return 1 if raw in ("EI", "IE") else -1
    value = float(raw)
    return 1 if value > 0 else -1


def feature_value(name, raw):
    if name == "splice":
        # Ambiguity codes (D, N, R, S) map to 0.
        return NUCLEOTIDE.get(raw, 0)
    return float(raw)


def write_binary(out_dir, short, name):
    rows = list(keel_rows(name))
    d = len(rows[0]) - 1
    path = os.path.join(out_dir, short + ".csv")
    with open(path, "w") as fh:
        fh.write(",".join(["label"] + ["x%d" % (j + 1) for j in range(d)]))
        fh.write("\n")
        for row in rows:
            feats = [feature_value(name, c) for c in row[:-1]]
            fh.write(",".join([str(binary_label(name, row[-1]))] +
                              ["%.10g" % v for v in feats]))
            fh.write("\n")
    print("wrote %s (%d rows, d=%d)" % (path, len(rows), d))


def read_idx(images_path, labels_path):
    with open(labels_path, "rb") as fh:
        _, n = struct.unpack(">II", fh.read(8))
        labels = list(fh.read(n))
    with open(images_path, "rb") as fh:
        _, n2, rows, cols = struct.unpack(">IIII", fh.read(16))
        assert n2 == n
        size = rows * cols
        images = [fh.read(size) for _ in range(n)]
    return images, labels


def write_libsvm_gz(path, images, labels, indices):
    with gzip.open(path, "wt", compresslevel=9) as fh:
        for i in indices:
            parts = [str(labels[i] + 1)]
            for j, px in enumerate(images[i]):
                if px:
                    parts.append("%d:%s" % (j + 1, ("%.4f" % (px / 255.0)).rstrip("0").rstrip(".")))
            fh.write(" ".join(parts))
            fh.write("\n")
    print("wrote %s (%d rows)" % (path, len(indices)))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data")
    parser.add_argument("--mnist-dir", help="directory holding the MNIST IDX files")
    parser.add_argument("--mnist-train", type=int, default=12000)
    parser.add_argument("--mnist-test", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    for short, name in BINARY_SETS.items():
        write_binary(args.out, short, name)

    if args.mnist_dir:
        rng = random.Random(args.seed)
        images, labels = read_idx(
            os.path.join(args.mnist_dir, "train-images-idx3-ubyte"),
            os.path.join(args.mnist_dir, "train-labels-idx1-ubyte"))
        pick = sorted(rng.sample(range(len(labels)), args.mnist_train))
        write_libsvm_gz(os.path.join(args.out, "mnist_train.libsvm.gz"), images, labels, pick)
        images, labels = read_idx(
            os.path.join(args.mnist_dir, "t10k-images-idx3-ubyte"),
            os.path.join(args.mnist_dir, "t10k-labels-idx1-ubyte"))
        pick = list(range(min(args.mnist_test, len(labels))))
        write_libsvm_gz(os.path.join(args.out, "mnist_test.libsvm.gz"), images, labels, pick)


if __name__ == "__main__":
    main()
