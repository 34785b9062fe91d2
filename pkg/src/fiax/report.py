"""Check records and reports."""

import json


class AxiomViolation(AssertionError):
    def __init__(self, record):
        super().__init__("%s failed: %s" % (record.check_id, record.witness))
        self.record = record


class Record:
    __slots__ = ("check_id", "anchor", "status", "witness", "negative_control", "detail")

    def __init__(self, check_id, anchor, ok, witness=None, negative_control=False, detail=None):
        self.check_id = check_id
        self.anchor = anchor
        if ok is None:
            self.status = "skip"
        else:
            self.status = "pass" if ok else "fail"
        self.witness = witness
        self.negative_control = negative_control
        self.detail = detail

    @property
    def ok(self):
        return self.status != "fail"

    def as_dict(self):
        d = {"id": self.check_id, "anchor": self.anchor, "status": self.status,
             "negative_control": self.negative_control}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail is not None:
            d["detail"] = self.detail
        return d

    def __repr__(self):
        return "Record(%s, %s)" % (self.check_id, self.status)


def negative(check_id, anchor, detected, witness=None, detail=None):
    """A negative control passes when the planted violation is detected."""
    return Record(check_id, anchor, bool(detected), witness=witness,
                  negative_control=True, detail=detail)


class Report:
    def __init__(self, records=None):
        self.records = list(records or [])

    def add(self, rec):
        self.records.append(rec)
        return rec

    def extend(self, other):
        self.records.extend(other.records if isinstance(other, Report) else other)
        return self

    @property
    def ok(self):
        return all(r.ok for r in self.records)

    def failures(self):
        return [r for r in self.records if not r.ok]

    def raise_on_failure(self):
        for r in self.records:
            if not r.ok:
                raise AxiomViolation(r)
        return self

    def get(self, check_id):
        for r in self.records:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def sorted(self):
        return sorted(self.records, key=lambda r: r.check_id)

    def to_json(self, meta=None):
        doc = {"schema": "fiax-report/1", "meta": meta or {},
               "records": [r.as_dict() for r in self.sorted()],
               "summary": {"total": len(self.records),
                           "failed": len(self.failures())}}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self, verbose=False):
        lines = []
        for r in self.sorted():
            tag = "PASS" if r.status == "pass" else r.status.upper()
            neg = " [negative control]" if r.negative_control else ""
            lines.append("%-4s %-58s %s%s" % (tag, r.check_id, r.anchor, neg))
            if r.witness is not None and (verbose or r.status == "fail"):
                lines.append("       witness: %s" % json.dumps(r.witness, sort_keys=True))
            if verbose and r.detail is not None:
                lines.append("       detail: %s" % json.dumps(r.detail, sort_keys=True))
        lines.append("%d checks, %d failed" % (len(self.records), len(self.failures())))
        return "\n".join(lines)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)
