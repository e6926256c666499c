#!/usr/bin/env python3
"""Regenerate the bundled data files under data/.

  data/starlink_like_full.tle   multi-shell Starlink-like catalog (~7300 sats)
  data/starlink_like_1000.tle   seeded 1000-satellite sample of the above
  data/population.csv           metro-area population points
  data/gateways.csv             100 seeded gateway sites

The catalog mimics the public Starlink shell layout (altitude, inclination,
plane count) with Walker phasing plus small random perturbations. Epochs are
set to 2025-07-16 16:00 UTC. Output is deterministic.
"""
import math
import os
import random

MU = 3.986004418e14
R_EARTH = 6.3781e6
EPOCH_FIELD = "25197.66666667"

# (altitude km, inclination deg, planes, sats per plane, walker F)
SHELLS = [
    (540.0, 53.2, 72, 22, 17),
    (550.0, 53.0, 72, 22, 11),
    (560.0, 97.6, 6, 58, 1),
    (570.0, 70.0, 36, 12, 5),
    (530.0, 43.0, 28, 72, 7),
    (559.0, 53.05, 48, 27, 13),
]


def checksum(line):
    s = 0
    for ch in line[:68]:
        if ch.isdigit():
            s += int(ch)
        elif ch == "-":
            s += 1
    return s % 10


def tle_lines(satnum, incl, raan, ecc, argp, ma, mm_rev_day):
    l1 = "1 {:05d}U 19029{:<3} {} {} {} {} 0  999".format(
        satnum, "A", EPOCH_FIELD, " .00000000", " 00000-0", " 00000-0")
    l1 = l1[:68]
    l1 = l1 + str(checksum(l1))
    ecc_field = "{:07d}".format(int(round(ecc * 1e7)))
    l2 = "2 {:05d} {:8.4f} {:8.4f} {} {:8.4f} {:8.4f} {:11.8f}{:5d}".format(
        satnum, incl, raan, ecc_field, argp, ma, mm_rev_day, 1)
    l2 = l2[:68]
    l2 = l2 + str(checksum(l2))
    assert len(l1) == 69 and len(l2) == 69, (l1, l2)
    return l1, l2


def make_catalog(rng):
    records = []
    satnum = 44000
    for shell_idx, (alt, inc, planes, per_plane, f) in enumerate(SHELLS):
        a = R_EARTH + alt * 1e3
        n = math.sqrt(MU / a ** 3)
        mm = n * 86400.0 / (2.0 * math.pi)
        raan_offset = 360.0 * rng.random()
        for p in range(planes):
            raan = (raan_offset + 360.0 * p / planes + rng.gauss(0, 0.05)) % 360.0
            for k in range(per_plane):
                ma = (360.0 * k / per_plane + 360.0 * f * p / (planes * per_plane)
                      + rng.gauss(0, 0.3)) % 360.0
                ecc = 1e-4 + 1.5e-4 * rng.random()
                argp = 360.0 * rng.random()
                # argument of latitude is what Walker phasing fixes
                ma = (ma - argp) % 360.0
                mm_i = mm * (1.0 + rng.gauss(0, 2e-6))
                name = "STARLINK-LIKE-{}-{}".format(shell_idx, satnum)
                l1, l2 = tle_lines(satnum, inc + rng.gauss(0, 0.01), raan, ecc,
                                   argp, ma, mm_i)
                records.append((name, l1, l2))
                satnum += 1
    return records


# Approximate metro-area populations (millions), rounded.
METROS = [
    ("Tokyo", 35.68, 139.69, 37.0), ("Delhi", 28.61, 77.21, 32.0),
    ("Shanghai", 31.23, 121.47, 28.5), ("Dhaka", 23.81, 90.41, 23.0),
    ("Sao Paulo", -23.55, -46.63, 22.6), ("Mexico City", 19.43, -99.13, 22.3),
    ("Cairo", 30.04, 31.24, 22.0), ("Beijing", 39.90, 116.41, 21.8),
    ("Mumbai", 19.08, 72.88, 21.3), ("Osaka", 34.69, 135.50, 19.0),
    ("Chongqing", 29.56, 106.55, 17.3), ("Karachi", 24.86, 67.01, 17.2),
    ("Kinshasa", -4.44, 15.27, 16.3), ("Lagos", 6.52, 3.38, 15.9),
    ("Istanbul", 41.01, 28.98, 15.8), ("Buenos Aires", -34.60, -58.38, 15.5),
    ("Kolkata", 22.57, 88.36, 15.3), ("Manila", 14.60, 120.98, 14.7),
    ("Guangzhou", 23.13, 113.26, 14.3), ("Tianjin", 39.34, 117.36, 14.0),
    ("Lahore", 31.55, 74.34, 13.9), ("Bangalore", 12.97, 77.59, 13.6),
    ("Rio de Janeiro", -22.91, -43.17, 13.7), ("Shenzhen", 22.54, 114.06, 13.0),
    ("Moscow", 55.76, 37.62, 12.7), ("Chennai", 13.08, 80.27, 11.8),
    ("Bogota", 4.71, -74.07, 11.3), ("Paris", 48.86, 2.35, 11.2),
    ("Jakarta", -6.21, 106.85, 11.2), ("Lima", -12.05, -77.04, 11.0),
    ("Bangkok", 13.76, 100.50, 11.0), ("Hyderabad", 17.39, 78.49, 10.8),
    ("Seoul", 37.57, 126.98, 10.0), ("Nagoya", 35.18, 136.91, 9.5),
    ("London", 51.51, -0.13, 9.6), ("Chengdu", 30.57, 104.07, 9.5),
    ("Tehran", 35.69, 51.39, 9.5), ("Nanjing", 32.06, 118.80, 9.4),
    ("Ho Chi Minh City", 10.82, 106.63, 9.3), ("Luanda", -8.84, 13.23, 9.0),
    ("Wuhan", 30.59, 114.31, 8.6), ("New York", 40.71, -74.01, 18.8),
    ("Los Angeles", 34.05, -118.24, 12.5), ("Chicago", 41.88, -87.63, 8.9),
    ("Houston", 29.76, -95.37, 7.1), ("Dallas", 32.78, -96.80, 7.6),
    ("Toronto", 43.65, -79.38, 6.3), ("Miami", 25.76, -80.19, 6.1),
    ("Atlanta", 33.75, -84.39, 6.1), ("Washington", 38.91, -77.04, 6.3),
    ("Philadelphia", 39.95, -75.17, 6.2), ("Phoenix", 33.45, -112.07, 4.9),
    ("Boston", 42.36, -71.06, 4.9), ("San Francisco", 37.77, -122.42, 4.7),
    ("Seattle", 47.61, -122.33, 4.0), ("Montreal", 45.50, -73.57, 4.3),
    ("Madrid", 40.42, -3.70, 6.7), ("Barcelona", 41.39, 2.17, 5.6),
    ("Berlin", 52.52, 13.41, 4.6), ("Rome", 41.90, 12.50, 4.3),
    ("Milan", 45.46, 9.19, 4.3), ("Athens", 37.98, 23.73, 3.6),
    ("Ruhr", 51.45, 7.01, 5.1), ("Warsaw", 52.23, 21.01, 3.1),
    ("Kyiv", 50.45, 30.52, 3.0), ("St Petersburg", 59.93, 30.34, 5.4),
    ("Riyadh", 24.71, 46.68, 7.5), ("Baghdad", 33.31, 44.36, 7.5),
    ("Johannesburg", -26.20, 28.05, 6.2), ("Nairobi", -1.29, 36.82, 5.1),
    ("Addis Ababa", 9.03, 38.74, 5.2), ("Khartoum", 15.50, 32.56, 6.2),
    ("Dar es Salaam", -6.79, 39.21, 7.4), ("Abidjan", 5.36, -4.01, 5.5),
    ("Accra", 5.60, -0.19, 2.6), ("Casablanca", 33.57, -7.59, 3.8),
    ("Algiers", 36.75, 3.06, 2.9), ("Santiago", -33.45, -70.67, 6.9),
    ("Belo Horizonte", -19.92, -43.94, 6.2), ("Caracas", 10.48, -66.90, 3.0),
    ("Sydney", -33.87, 151.21, 5.3), ("Melbourne", -37.81, 144.96, 5.1),
    ("Singapore", 1.35, 103.82, 5.9), ("Kuala Lumpur", 3.14, 101.69, 8.4),
    ("Hanoi", 21.03, 105.85, 5.2), ("Yangon", 16.87, 96.20, 5.6),
    ("Ahmedabad", 23.02, 72.57, 8.6), ("Pune", 18.52, 73.86, 7.0),
    ("Surat", 21.17, 72.83, 7.8), ("Xi'an", 34.34, 108.94, 8.0),
    ("Hangzhou", 30.27, 120.16, 7.9), ("Shenyang", 41.81, 123.43, 7.5),
    ("Taipei", 25.03, 121.57, 7.0), ("Hong Kong", 22.32, 114.17, 7.5),
    ("Busan", 35.18, 129.08, 3.4), ("Fukuoka", 33.59, 130.40, 2.6),
    ("Tashkent", 41.30, 69.24, 2.9), ("Almaty", 43.24, 76.89, 2.0),
    ("Novosibirsk", 55.01, 82.93, 1.6), ("Kabul", 34.56, 69.21, 4.6),
    ("Auckland", -36.85, 174.76, 1.7), ("Perth", -31.95, 115.86, 2.1),
    ("Vancouver", 49.28, -123.12, 2.6), ("Denver", 39.74, -104.99, 2.9),
    ("Minneapolis", 44.98, -93.27, 3.7), ("Guadalajara", 20.66, -103.35, 5.3),
    ("Monterrey", 25.69, -100.32, 5.3), ("Havana", 23.11, -82.37, 2.1),
    ("Quito", -0.18, -78.47, 2.0), ("Recife", -8.05, -34.88, 4.1),
    ("Porto Alegre", -30.03, -51.23, 4.3), ("Stockholm", 59.33, 18.07, 2.4),
    ("Amsterdam", 52.37, 4.90, 2.5), ("Brussels", 50.85, 4.35, 2.1),
    ("Vienna", 48.21, 16.37, 2.0), ("Budapest", 47.50, 19.04, 1.8),
    ("Bucharest", 44.43, 26.10, 1.8), ("Lisbon", 38.72, -9.14, 2.9),
    ("Manchester", 53.48, -2.24, 2.8), ("Dublin", 53.35, -6.26, 1.4),
]


def population_rows(rng):
    # each metro is spread into a small cluster so coverage discs capture
    # partial populations rather than all-or-nothing point masses
    rows = []
    for name, lat, lon, pop_m in METROS:
        pieces = 7
        weights = [1.0] + [0.5] * (pieces - 1)
        total = sum(weights)
        for k in range(pieces):
            if k == 0:
                dlat = dlon = 0.0
            else:
                ang = 2 * math.pi * (k - 1) / (pieces - 1)
                rad_km = 60.0 + 40.0 * rng.random()
                dlat = rad_km / 111.0 * math.sin(ang)
                dlon = rad_km / (111.0 * max(0.2, math.cos(math.radians(lat)))) * math.cos(ang)
            rows.append((lat + dlat, lon + dlon, int(pop_m * 1e6 * weights[k] / total)))
    return rows


# land boxes (lat_min, lat_max, lon_min, lon_max, weight) that loosely cover
# where amateur ground stations cluster
GATEWAY_BOXES = [
    (36, 60, -10, 30, 0.30),    # Europe
    (28, 50, -125, -70, 0.25),  # North America
    (-35, 5, -70, -40, 0.08),   # South America
    (-35, 5, 15, 40, 0.06),     # Southern/Eastern Africa
    (8, 40, 70, 120, 0.12),     # South/East Asia
    (30, 45, 128, 142, 0.06),   # Japan/Korea
    (-38, -20, 115, 152, 0.07), # Australia
    (50, 68, 40, 120, 0.06),    # Russia/Siberia
]


def gateway_rows(rng):
    rows = []
    total = sum(b[4] for b in GATEWAY_BOXES)
    for k in range(100):
        u = rng.random() * total
        acc = 0.0
        for b in GATEWAY_BOXES:
            acc += b[4]
            if u <= acc:
                box = b
                break
        lat = box[0] + (box[1] - box[0]) * rng.random()
        lon = box[2] + (box[3] - box[2]) * rng.random()
        rows.append((lat, lon, "gs{:03d}".format(k)))
    return rows


def main():
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
    rng = random.Random(20250716)
    cat = make_catalog(rng)
    with open(os.path.join(root, "starlink_like_full.tle"), "w") as f:
        for name, l1, l2 in cat:
            f.write(name + "\n" + l1 + "\n" + l2 + "\n")
    sample = sorted(rng.sample(range(len(cat)), 1000))
    with open(os.path.join(root, "starlink_like_1000.tle"), "w") as f:
        for idx in sample:
            name, l1, l2 = cat[idx]
            f.write(name + "\n" + l1 + "\n" + l2 + "\n")
    with open(os.path.join(root, "population.csv"), "w") as f:
        f.write("lat_deg,lon_deg,population\n")
        for lat, lon, pop in population_rows(rng):
            f.write("{:.4f},{:.4f},{}\n".format(lat, lon, pop))
    with open(os.path.join(root, "gateways.csv"), "w") as f:
        f.write("lat_deg,lon_deg,name\n")
        for lat, lon, name in gateway_rows(rng):
            f.write("{:.4f},{:.4f},{}\n".format(lat, lon, name))
    print("catalog", len(cat), "sample", len(sample))


if __name__ == "__main__":
    main()
