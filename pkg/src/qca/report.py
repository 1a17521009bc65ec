"""Structured pass/fail records of verification runs."""

import json

from gmpy2 import mpq


def ratu_string(x):
    """Text form of an exact value as a constant rational function of u."""
    if isinstance(x, (int, type(mpq(0)))):
        return "[{%s}]/[{1}]" % mpq(x)
    return str(x)


def witness_text(w):
    """Render a verifier witness with exact values as strings."""
    if w is None:
        return None
    out = {}
    if "assignment" in w:
        out["assignment"] = {k: str(v) for k, v in sorted(w["assignment"].items())}
    if w.get("entry") is not None:
        out["entry"] = list(w["entry"]) if isinstance(w["entry"], tuple) else w["entry"]
    for k in ("lhs", "rhs"):
        if k in w:
            out[k] = ratu_string(w[k])
    for k, v in w.items():
        if k not in ("assignment", "entry", "lhs", "rhs"):
            out[k] = v if isinstance(v, (str, int, list, dict)) else str(v)
    return out


class CheckReport:
    """Suite id, parameters, and one item per scheduled identity."""

    def __init__(self, suite, params=None):
        self.suite = suite
        self.params = dict(params or {})
        self.items = []

    def add(self, item_id, anchor, status, witness=None, millis=0.0, note=None):
        item = {"id": item_id, "anchor": anchor, "status": status}
        if witness is not None:
            item["witness"] = witness
        if note is not None:
            item["note"] = note
        item["millis"] = round(float(millis), 3)
        self.items.append(item)
        return item

    def extend(self, other):
        self.items.extend(other.items)
        return self

    @property
    def passed(self):
        return sum(1 for it in self.items if it["status"] == "PASS")

    @property
    def ok(self):
        return all(it["status"] == "PASS" for it in self.items)

    def summary(self):
        return {"passed": self.passed, "total": len(self.items),
                "status": "PASS" if self.ok else "FAIL"}

    def sorted_items(self):
        return sorted(self.items, key=lambda it: it["id"])

    def to_dict(self, timing=True):
        items = []
        for it in self.sorted_items():
            d = {"id": it["id"], "anchor": it["anchor"], "status": it["status"]}
            if "witness" in it:
                d["witness"] = it["witness"]
            if "note" in it:
                d["note"] = it["note"]
            if timing:
                d["millis"] = it["millis"]
            items.append(d)
        return {"suite": self.suite, "params": self.params, "items": items,
                "summary": self.summary()}

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        r = cls(d["suite"], d["params"])
        for it in d["items"]:
            r.add(it["id"], it["anchor"], it["status"], it.get("witness"),
                  it.get("millis", 0.0), it.get("note"))
        return r

    def to_text(self):
        rows = [(it["status"], it["id"], "%.1f ms" % it["millis"], it["anchor"])
                for it in self.sorted_items()]
        w = [max([len(r[k]) for r in rows] + [0]) for k in range(3)]
        lines = ["suite %s  %s" % (self.suite, " ".join("%s=%s" % kv for kv in self.params.items()))]
        for r in rows:
            lines.append("%-*s  %-*s  %*s  %s" % (w[0], r[0], w[1], r[1], w[2], r[2], r[3]))
        s = self.summary()
        lines.append("summary: %d/%d %s" % (s["passed"], s["total"], s["status"]))
        for it in self.sorted_items():
            if "witness" in it:
                lines.append("witness %s: %s" % (it["id"], json.dumps(it["witness"], ensure_ascii=False)))
        return "\n".join(lines)

    def __repr__(self):
        s = self.summary()
        return "CheckReport(%s, %d/%d)" % (self.suite, s["passed"], s["total"])
