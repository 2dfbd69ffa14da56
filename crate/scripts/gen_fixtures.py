"""Regenerates fixtures/ from PARI/GP (via cypari) and sympy.

Local data comes from elllocalred on the minimal model; Iwasawa invariants are
transcribed by hand from published tables and are not recomputed here.
"""
import json
import os
import sys

from cypari import pari
from sympy import diff, expand, symbols

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")

CLASSIC = {
    "11a1": [0, -1, 1, -10, -20],
    "14a1": [1, 0, 1, 4, -6],
    "15a1": [1, 1, 1, -10, -10],
    "17a1": [1, -1, 1, -1, -14],
    "19a1": [0, 1, 1, -9, -15],
    "20a1": [0, 1, 0, 4, 4],
    "21a1": [1, 0, 0, -4, -1],
    "24a1": [0, -1, 0, -4, 4],
    "26a1": [1, 0, 1, -5, -8],
    "27a1": [0, 0, 1, 0, -7],
    "30a1": [1, 0, 1, 1, 2],
    "32a1": [0, 0, 0, 4, 0],
    "36a1": [0, 0, 0, 0, 1],
    "37a1": [0, 0, 1, -1, 0],
    "43a1": [0, 1, 1, 0, 0],
    "44a1": [0, 1, 0, 3, -1],
    "48a1": [0, 1, 0, -4, -4],
    "54a1": [1, -1, 0, 12, 8],
}

# Labels of family members as printed in Cremona's tables.
FAMILY_LABELS = {
    (3, 1, 0): "32a2",
    (3, 1, 1): "352f1",
    (3, 1, 2): "16096h1",
    (3, 1, 3): "18784b1",
    (3, -1, 0): "64a4",
    (3, -1, 2): "22976p1",
    (3, -1, 4): "423872t1",
    (3, -1, 5): "131392f1",
    (5, 3, 0): "3888s1",
    (5, 14, 0): "28224dj1",
}

# Members too large for Cremona's tables.
LARGE_MEMBERS = [(3, 1, 18), (3, -1, 149), (5, 3, 6), (5, 3, 14), (5, 14, 6), (5, 14, 8)]

# (p, lambda+, lambda-) for curves whose invariants appear in LMFDB.
LMFDB_IWASAWA = {
    "32a2": (3, 0, 0),
    "18784b1": (3, 1, 1),
    "64a4": (3, 0, 0),
    "22976p1": (3, 3, 3),
    "131392f1": (3, 0, 0),
    "3888s1": (5, 1, 1),
    "28224dj1": (5, 3, 1),
}


def num(n):
    n = int(n)
    return n if abs(n) < 2**53 else str(n)


def p3_curve(D, t):
    a, b = -D, 0
    c4 = 48 * (27 * a**3 * t**4 + 18 * a**2 * t**2 - 54 * a * b * t**3 - a + 243 * b**2 * t**4 + 18 * b * t)
    c6 = 864 * (-108 * a**4 * t**5 + 243 * a**3 * b * t**6 - 135 * a**2 * b * t**4 - 4 * a**2 * t
                - 486 * a * b**2 * t**5 + 45 * a * b * t**2 + 1458 * b**3 * t**6 - 270 * b**2 * t**3 - b)
    return [0, 0, 0, -27 * c4, -54 * c6]


_u, _v, _A = symbols("u v A")
_F = 4 * (_v**12 + 55 * _A * _u**3 * _v**9 - 165 * _A**2 * _u**6 * _v**6
          - 275 * _A**3 * _u**9 * _v**3 + 25 * _A**4 * _u**12)
_H = expand((diff(_F, _u, 2) * diff(_F, _v, 2) - diff(_F, _u, _v) ** 2) / 121)
_T = expand((diff(_F, _u) * diff(_H, _v) - diff(_F, _v) * diff(_H, _u)) / 20)


def p5_curve(D, t):
    h = int(_H.subs({_A: D, _u: t, _v: 1}))
    tt = int(_T.subs({_A: D, _u: t, _v: 1}))
    return [0, 0, 0, 27 * h, -54 * tt]


def minimal(ai):
    return [int(x) for x in pari(f"ellminimalmodel(ellinit({ai}))[1..5]")]


def record(label, ai):
    s = str(ai)
    E = f"ellinit({s})"
    N = int(pari(f"ellglobalred({E})[1]"))
    primes = [int(q) for q in pari(f"factor(abs(ellinit(ellminimalmodel({E})).disc))[,1]")]
    local = []
    for q in primes:
        lr = pari(f"elllocalred({E},{q})")
        f, kod, c = int(lr[0]), int(lr[1]), int(lr[3])
        if f == 0:
            rt = "good"
        elif f == 1:
            rt = "multiplicative-split" if int(pari(f"ellap({E},{q})")) == 1 else "multiplicative-nonsplit"
        else:
            rt = "additive"
        local.append({
            "prime": num(q),
            "reduction_type": rt,
            "kodaira": kodaira(kod),
            "conductor_exponent": f,
            "tamagawa": c,
            "discriminant_valuation": int(pari(f"valuation(ellinit(ellminimalmodel({E})).disc,{q})")),
        })
    tors = [int(x) for x in pari(f"elltors({E})[2]")]
    rec = {
        "label": label,
        "ainvs": [num(x) for x in ai],
        "conductor": num(N),
        "local_data": local,
        "torsion_structure": tors,
        "iwasawa": None,
        "source": "fixture",
    }
    if label in LMFDB_IWASAWA:
        p, lp, lm = LMFDB_IWASAWA[label]
        rec["iwasawa"] = {"p": p, "lambda_plus": lp, "lambda_minus": lm, "mu_plus": 0, "mu_minus": 0}
    return rec


def kodaira(k):
    if k == 1:
        return "I0"
    if k in (2, 3, 4):
        return ["", "", "II", "III", "IV"][k]
    if k > 4:
        return f"I{k - 4}"
    if k == -1:
        return "I0*"
    if k in (-2, -3, -4):
        return {-2: "II*", -3: "III*", -4: "IV*"}[k]
    return f"I{-k - 4}*"


def disc(ai):
    a1, a2, a3, a4, a6 = ai
    b2, b4, b6 = a1 * a1 + 4 * a2, a1 * a3 + 2 * a4, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def random_local_data(count=400, seed=20191001):
    """Local data of pseudo-random curves, many with additive reduction at 2 and 3."""
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ai = [rng.randint(-3, 3), rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-300, 300), rng.randint(-3000, 3000)]
        r = rng.random()
        if r < 0.5:
            a1, a2, a3, a4, a6 = ai
            b2, b4, b6 = a1 * a1 + 4 * a2, a1 * a3 + 2 * a4, a3 * a3 + 4 * a6
            c4, c6 = b2 * b2 - 24 * b4, -b2**3 + 36 * b2 * b4 - 216 * b6
            d = rng.choice([-1, 2, -2, 3, -3, 6, -6, 12, -12])
            ai = [0, 0, 0, -27 * c4 * d * d, -54 * c6 * d**3]
        elif r < 0.7:
            u = rng.choice([2, 3, 6])
            ai = [ai[0] * u, ai[1] * u**2, ai[2] * u**3, ai[3] * u**4, ai[4] * u**6]
        if disc(ai) == 0:
            continue
        rec = record(None, ai)
        out.append({"ainvs": rec["ainvs"], "conductor": rec["conductor"], "local_data": rec["local_data"]})
    return out


def write(path, obj):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def main():
    for label, ai in CLASSIC.items():
        write(os.path.join(ROOT, "curves", f"{label}.json"), record(label, ai))
    for (p, D, t), label in FAMILY_LABELS.items():
        ai = minimal(p3_curve(D, t) if p == 3 else p5_curve(D, t))
        write(os.path.join(ROOT, "curves", f"{label}.json"), record(label, ai))
    large = []
    for p, D, t in LARGE_MEMBERS:
        ai = minimal(p3_curve(D, t) if p == 3 else p5_curve(D, t))
        rec = record(f"p{p}-D{D}-t{t}", ai)
        rec["label"] = None
        rec["name"] = f"p={p} D={D} t={t}"
        large.append(rec)
    write(os.path.join(ROOT, "large_members.json"), large)
    write(os.path.join(ROOT, "local_data_random.json"), random_local_data())
    print("ok", file=sys.stderr)


if __name__ == "__main__":
    main()
