#!/usr/bin/env python3
"""Regenerates the synthetic benchmark record fixtures in this directory."""
import json
import pathlib

HERE = pathlib.Path(__file__).parent

QUESTIONS = [
    ("In triangle ABC, M is the midpoint of AB and CM = 6. Find AB.", "numeric", "12", None),
    ("Segment AB is parallel to CD and AB = 5. Which statement holds?", "choice", "B", ["A", "B", "C", "D"]),
    ("Circle O has radius 3. What is the length of diameter PQ?", "numeric", "6", None),
    ("Which angle equals angle ABC?", "choice", "C", ["A", "B", "C", "D"]),
    ("The square WXYZ has side 4. Find its area.", "numeric", "16", None),
    ("Line EF is tangent to circle O at T. Which segment is perpendicular to EF?", "choice", "A", ["A", "B", "C", "D"]),
    ("In parallelogram ABCD the diagonals meet at E. Find AE/EC.", "numeric", "1", None),
    ("Points P, Q, R are collinear with PQ = QR. What is Q called?", "choice", "D", ["A", "B", "C", "D"]),
    ("The perimeter of rhombus KLMN is 20. Find KL.", "numeric", "5", None),
    ("Arc AB subtends a central angle of 60 degrees. Which chord is the longest?", "choice", "B", ["A", "B", "C", "D"]),
]


def mathverse():
    rows = []
    for tag, variant in (("vo", "vision-only"), ("vi", "vision-intensive")):
        for i, (question, answer_type, gold, options) in enumerate(QUESTIONS):
            row = {
                "id": f"mv-{tag}-{i:02d}",
                "benchmark": "mathverse",
                "variant": variant,
                "question": question,
                "image_path": f"images/img{i % 6}.png",
                "gold": gold,
                "answer_type": answer_type,
            }
            if options:
                row["options"] = options
            rows.append(row)
    return rows


def mathvista():
    rows = []
    for i, (question, answer_type, gold, options) in enumerate(QUESTIONS[:3]):
        row = {
            "id": f"mvista-{i:02d}",
            "benchmark": "mathvista-geometry",
            "question": question,
            "image_path": f"images/img{(i + 1) % 6}.png",
            "gold": gold,
            "answer_type": answer_type,
            "tags": ["geometry reasoning", "diagram"],
        }
        if options:
            row["options"] = options
        rows.append(row)
    # a non-geometry row that the ingest filter should skip
    rows.append({
        "id": "mvista-skip",
        "benchmark": "mathvista-geometry",
        "question": "What is the bar chart's maximum value?",
        "image_path": "images/img4.png",
        "gold": "7",
        "answer_type": "numeric",
        "tags": ["chart qa"],
    })
    return rows


def geoqa():
    rows = []
    for i, (question, answer_type, gold, options) in enumerate(QUESTIONS[3:6]):
        row = {
            "id": f"geoqa-{i:02d}",
            "benchmark": "geoqa",
            "question": question,
            "image_path": f"images/img{(i + 2) % 6}.png",
            "gold": gold,
            "answer_type": answer_type,
        }
        if options:
            row["options"] = options
        rows.append(row)
    return rows


def bad_rows():
    return [
        # gold outside the option set
        {"id": "bad-gold", "benchmark": "mathverse", "variant": "vision-only",
         "question": "Pick one.", "image_path": "images/img0.png", "gold": "E",
         "answer_type": "choice", "options": ["A", "B", "C", "D"]},
        # valid row (survives)
        {"id": "ok-1", "benchmark": "mathverse", "variant": "vision-only",
         "question": "Valid row. Which holds?", "image_path": "images/img1.png", "gold": "A",
         "answer_type": "choice", "options": ["A", "B"]},
        # duplicate id
        {"id": "ok-1", "benchmark": "mathverse", "variant": "vision-only",
         "question": "Duplicate of ok-1.", "image_path": "images/img1.png", "gold": "B",
         "answer_type": "choice", "options": ["A", "B"]},
        # missing question
        {"id": "bad-missing", "benchmark": "mathverse", "variant": "vision-only",
         "question": "", "image_path": "images/img2.png", "gold": "A",
         "answer_type": "choice", "options": ["A", "B"]},
        # numeric gold that is not a rational
        {"id": "bad-numeric", "benchmark": "mathverse", "variant": "vision-only",
         "question": "Find x.", "image_path": "images/img3.png", "gold": "sqrt(2)",
         "answer_type": "numeric"},
        # image file that does not exist
        {"id": "bad-image", "benchmark": "mathverse", "variant": "vision-only",
         "question": "Missing image.", "image_path": "images/nope.png", "gold": "A",
         "answer_type": "choice", "options": ["A", "B"]},
        # bad variant
        {"id": "bad-variant", "benchmark": "mathverse", "variant": "vision-max",
         "question": "Bad variant.", "image_path": "images/img0.png", "gold": "A",
         "answer_type": "choice", "options": ["A", "B"]},
    ]


def write(name, rows, raw_tail=None):
    path = HERE / name
    with open(path, "w") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")
        if raw_tail:
            f.write(raw_tail + "\n")
    print(f"wrote {path} ({len(rows)} rows)")


if __name__ == "__main__":
    write("mathverse_records.jsonl", mathverse())
    write("mathvista_records.jsonl", mathvista())
    write("geoqa_records.jsonl", geoqa())
    # last line is intentionally invalid JSON
    write("bad_records.jsonl", bad_rows(), raw_tail="{not json at all")
