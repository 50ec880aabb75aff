"""Regenerates the table golden files straight from the two published tables.

Independent of the Rust code: the j(p,q), j0 and stable-range entries are
typed in here from the tables themselves.
"""
import csv
import io
import json
import pathlib

MAX = 4
HERE = pathlib.Path(__file__).parent


def highest_weight():
    rows = []
    for fam in "ACD":
        scale = 2 if fam == "D" else 1
        for r in range(MAX + 1):
            for s in range(MAX + 1):
                n = r + s
                if n == 0 or n > MAX:
                    continue
                for p in range(r // scale + 1):
                    for q in range(s // scale + 1):
                        if p + q == 0:
                            continue
                        if fam == "A":
                            g, gp, h = f"U({n},{n})", f"U({p},{q})", f"U({r},{s})xU({s},{r})"
                            stable, ok = "n>=p+q", n >= p + q
                            form, j = "rs-(r-p)(s-q)", r * s - (r - p) * (s - q)
                        elif fam == "C":
                            g, gp, h = f"Sp({2 * n},R)", f"O({p},{q})", f"U({r},{s})"
                            stable, ok = "n>=p+q", n >= p + q
                            form, j = "2(rs-(r-p)(s-q))", 2 * (r * s - (r - p) * (s - q))
                        else:
                            g, gp, h = f"O*({2 * n})", f"Sp({p},{q})", f"U({r},{s})"
                            stable, ok = "n>=2(p+q)", n >= 2 * (p + q)
                            form, j = "rs-(r-2p)(s-2q)", r * s - (r - 2 * p) * (s - 2 * q)
                        rows.append(dict(family=fam, g=g, g_prime=gp, h=h, n=n, r=r, s=s, p=p, q=q,
                                         stable_range=stable, in_stable_range=ok, j_formula=form, j=j))
    return rows


def singular():
    rows = []
    for fam in "ACD":
        for n in range(1, MAX + 1):
            for r in range(1, MAX + 1):
                if fam == "A":
                    g, gp, st, form, j0 = "U(p,q)", f"U(n1,n2),n1+n2={n}", "p,q>=n1+n2", "(n1+n2)r", n * r
                elif fam == "C":
                    g, gp, st, form, j0 = "Sp(p,q)", f"O*({2 * n})", "p,q>=n", "2nr", 2 * n * r
                else:
                    g, gp, st, form, j0 = "O(p,q)", f"Sp({2 * n},R)", "p,q>=2n and max(p,q)>2n", "nr", n * r
                rows.append(dict(family=fam, g=g, g_prime=gp, n=n, r=r, stable_range=st, j0_formula=form, j0=j0))
    return rows


def as_csv(rows):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(rows[0].keys())
    for row in rows:
        w.writerow(["true" if v is True else "false" if v is False else v for v in row.values()])
    return out.getvalue()


if __name__ == "__main__":
    hw, sg = highest_weight(), singular()
    doc = {"kind": "tables", "highest_weight": hw, "singular": sg}
    (HERE / "tables.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    (HERE / "table1.csv").write_text(as_csv(hw))
    (HERE / "table2.csv").write_text(as_csv(sg))
