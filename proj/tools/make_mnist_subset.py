#!/usr/bin/env python3
# Copyright 2026 The qconc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes gzipped MNIST IDX files from the 10k-digit sample in the npm `mnist` package.

The package stores each digit class as a flat list of 28x28 images with
pixels divided by 255 and rounded to three decimals, so round(v * 255)
recovers the original bytes exactly. The first --train-fraction of every
class (in file order) becomes the train split, the rest the t10k split.

    npm pack mnist && tar xzf mnist-1.1.0.tgz
    tools/make_mnist_subset.py package/src/digits data/mnist-subset
"""

import argparse
import gzip
import json
import pathlib
import struct

PIXELS = 28 * 28


def load_digit(path):
    values = json.loads(path.read_text())["data"]
    if len(values) % PIXELS:
        raise ValueError(f"{path}: {len(values)} values is not a multiple of {PIXELS}")
    data = bytes(round(v * 255) for v in values)
    return [data[i:i + PIXELS] for i in range(0, len(data), PIXELS)]


def write_idx(prefix, images, labels):
    with gzip.GzipFile(f"{prefix}-images-idx3-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x803, len(images), 28, 28))
        f.writelines(images)
    with gzip.GzipFile(f"{prefix}-labels-idx1-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x801, len(labels)))
        f.write(bytes(labels))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("digits_dir", type=pathlib.Path, help="directory holding 0.json .. 9.json")
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--train-fraction", type=float, default=0.85)
    args = parser.parse_args()

    split = {"train": ([], []), "t10k": ([], [])}
    for digit in range(10):
        images = load_digit(args.digits_dir / f"{digit}.json")
        cut = int(len(images) * args.train_fraction)
        for name, part in (("train", images[:cut]), ("t10k", images[cut:])):
            split[name][0].extend(part)
            split[name][1].extend([digit] * len(part))

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, (images, labels) in split.items():
        write_idx(args.out_dir / name, images, labels)
        print(f"{name}: {len(images)} images")


if __name__ == "__main__":
    main()
