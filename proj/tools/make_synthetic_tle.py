#!/usr/bin/env python3
"""Writes the synthetic O3b and Inmarsat-4 TLE sets shipped with the default scenario.

Elements are circular two-body sets anchored at the mission start. GEO slots are
placed so the sub-satellite longitude at epoch matches the published orbital slot,
using the same linear GMST model the simulator applies.
"""
import math
import pathlib

MU = 3.986004418e14
R_E = 6371.0e3
EPOCH_YEAR = 22
EPOCH_DOY = 244 + 1.0 / 24.0  # 2022-09-01 01:00:00 UTC
# seconds from J2000 (2000-01-01T12:00:00) to 2022-09-01T01:00:00
J2000_OFFSET = (8279 - 0.5) * 86400.0 + 3600.0


def gmst_deg(seconds):
    return (280.46061837 + 360.98564736629 * seconds / 86400.0) % 360.0


def mean_motion_rev_day(a):
    return math.sqrt(MU / a**3) * 86400.0 / (2.0 * math.pi)


def checksum(line):
    total = 0
    for ch in line[:68]:
        if ch.isdigit():
            total += int(ch)
        elif ch == "-":
            total += 1
    return str(total % 10)


def tle(name, catnum, incl, raan, ecc, argp, mean_anom, mm):
    l1 = (f"1 {catnum:05d}U 22001A   {EPOCH_YEAR:02d}{EPOCH_DOY:012.8f} "
          f" .00000000  00000-0  00000-0 0  999")
    l2 = (f"2 {catnum:05d} {incl:8.4f} {raan:8.4f} {ecc:07d} {argp:8.4f} "
          f"{mean_anom:8.4f} {mm:11.8f}    1")
    assert len(l1) == 68 and len(l2) == 68, (len(l1), len(l2))
    return f"{name}\n{l1}{checksum(l1)}\n{l2}{checksum(l2)}\n"


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "scenarios" / "tle"
    out.mkdir(parents=True, exist_ok=True)

    a_meo = R_E + 8062.0e3
    with open(out / "o3b.tle", "w") as f:
        for k in range(20):
            f.write(tle(f"O3B SYN {k + 1:02d}", 90001 + k, 0.0, 0.0, 0, 0.0,
                        18.0 * k, mean_motion_rev_day(a_meo)))

    a_geo = 42164.0e3
    g = gmst_deg(J2000_OFFSET)
    # approximate Inmarsat-4 slots
    slots = [("INMARSAT 4-F1 SYN", 143.5), ("INMARSAT 4-F2 SYN", 25.0),
             ("INMARSAT 4-F3 SYN", -98.0)]
    with open(out / "inmarsat4.tle", "w") as f:
        for k, (name, lon) in enumerate(slots):
            f.write(tle(name, 90101 + k, 0.0, 0.0, 0, 0.0, (lon + g) % 360.0,
                        mean_motion_rev_day(a_geo)))


if __name__ == "__main__":
    main()
