import random

import pytest

from rpyscope.wos import CitedReference, CitingRecord

from surrogate import build_pos_surrogate


def make_export(records, trailer="EF\n"):
    """Serialize (py, [cr entries]) pairs into WoS plain-text bytes."""
    lines = ["FN Test Export", "VR 1.0"]
    for py, refs in records:
        lines.append("PT J")
        if py is not None:
            lines.append(f"PY {py}")
        for i, ref in enumerate(refs):
            lines.append(("CR " if i == 0 else "   ") + ref)
        lines.append("ER")
        lines.append("")
    text = "\n".join(lines) + "\n" + trailer
    return text.encode("utf-8")


def make_records(spec):
    """Build CitingRecord objects directly from (py, [(author, rpy, source)]) pairs."""
    records = []
    for py, refs in spec:
        cited = tuple(
            CitedReference(
                raw=f"{author}, {rpy}, {source}" if rpy else f"{author}, {source}",
                author=author,
                rpy=rpy,
                source=source,
            )
            for author, rpy, source in refs
        )
        records.append(CitingRecord(publication_year=py, cited_references=cited,
                                    source_line_range=(1, 1)))
    return records


def random_corpus(rng: random.Random, n_records=20, first=1960, last=1990):
    spec = []
    for _ in range(n_records):
        py = rng.choice([None] + list(range(2000, 2016)))
        refs = [
            (f"AUTH {rng.randrange(5)}", rng.randrange(first - 3, last + 4),
             f"J SRC {rng.randrange(4)}")
            for _ in range(rng.randrange(0, 12))
        ]
        spec.append((py, refs))
    return make_records(spec)


@pytest.fixture(scope="session")
def pos_text():
    return build_pos_surrogate()


@pytest.fixture(scope="session")
def pos_path(pos_text, tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "pos_surrogate.txt"
    path.write_text(pos_text, encoding="utf-8")
    return path
