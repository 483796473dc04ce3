#!/usr/bin/env python3
"""Convert the Salinas hyperspectral scene to a supsom CSV.

Reads the scene cube and its ground-truth map from MATLAB files, removes the
water absorption bands listed in data/salinas_water_bands.txt, drops unlabeled
pixels (class 0) and writes one row per pixel with columns
band_1..band_204,label.

    python3 tools/convert_salinas.py Salinas.mat Salinas_gt.mat salinas.csv

The already-corrected 204-band cube is accepted too, in which case no bands
are removed.
"""

import argparse
import pathlib
import sys

import numpy as np
import scipy.io

HERE = pathlib.Path(__file__).resolve().parent
DEFAULT_MASK = HERE.parent / "data" / "salinas_water_bands.txt"


def only_array(path):
    arrays = {k: v for k, v in scipy.io.loadmat(path).items() if not k.startswith("__")}
    if len(arrays) != 1:
        sys.exit(f"{path}: expected one array, found {sorted(arrays)}")
    return next(iter(arrays.values()))


def read_mask(path):
    bands = set()
    for line in pathlib.Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            bands.add(int(line))
    return sorted(bands)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("cube", help="scene .mat file (224 or 204 bands)")
    parser.add_argument("ground_truth", help="ground-truth .mat file")
    parser.add_argument("output", help="CSV file to write")
    parser.add_argument("--mask", default=DEFAULT_MASK, help="1-based bands to discard")
    args = parser.parse_args()

    cube = only_array(args.cube).astype(np.float64)
    gt = only_array(args.ground_truth).astype(np.int64)
    if cube.shape[:2] != gt.shape:
        sys.exit(f"cube {cube.shape} and ground truth {gt.shape} disagree")

    mask = read_mask(args.mask)
    if cube.shape[2] == 224:
        keep = [b for b in range(cube.shape[2]) if b + 1 not in mask]
        cube = cube[:, :, keep]
    elif cube.shape[2] != 224 - len(mask):
        sys.exit(f"unexpected band count {cube.shape[2]}")

    pixels = cube.reshape(-1, cube.shape[2])
    labels = gt.reshape(-1)
    labeled = labels != 0
    pixels, labels = pixels[labeled], labels[labeled]

    header = ",".join(f"band_{i + 1}" for i in range(pixels.shape[1])) + ",label"
    table = np.column_stack([pixels, labels])
    np.savetxt(args.output, table, delimiter=",", header=header, comments="", fmt="%.17g")
    print(f"wrote {len(labels)} pixels x {pixels.shape[1]} bands to {args.output}")


if __name__ == "__main__":
    main()
