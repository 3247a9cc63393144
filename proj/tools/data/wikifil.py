#!/usr/bin/env python3
# Licensed under the Apache License, Version 2.0.
"""Port of Matt Mahoney's wikifil.pl: reduce a MediaWiki XML dump to text8 form.

Output is lowercase a-z words separated by single spaces, digits spelled out,
on a single line.  Usage: wikifil.py < dump.xml > corpus.txt
"""
import re
import sys

DIGITS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"]

SUBS = [
    (re.compile(r"<.*>"), ""),
    (re.compile(r"&amp;"), "&"),
    (re.compile(r"&lt;"), "<"),
    (re.compile(r"&gt;"), ">"),
    (re.compile(r"<ref[^<]*</ref>"), ""),
    (re.compile(r"<[^>]*>"), ""),
    (re.compile(r"\[http:[^\] ]*"), "["),
    (re.compile(r"\|thumb", re.I), ""),
    (re.compile(r"\|left", re.I), ""),
    (re.compile(r"\|right", re.I), ""),
    (re.compile(r"\|\d+px", re.I), ""),
    (re.compile(r"\[\[image:[^\[\]]*\|", re.I), ""),
    (re.compile(r"\[\[category:([^|\]]*)[^\]]*\]\]", re.I), r"[[\1]]"),
    (re.compile(r"\[\[[a-z\-]*:[^\]]*\]\]"), ""),
    (re.compile(r"\[\[[^\|\]]*\|"), "[["),
    (re.compile(r"\{\{[^}]*\}\}"), ""),
    (re.compile(r"\{[^}]*\}"), ""),
    (re.compile(r"\["), ""),
    (re.compile(r"\]"), ""),
    (re.compile(r"&[^;]*;"), " "),
]
NON_ALPHA = re.compile(r"[^a-z]+")


def records(stream):
    buf = []
    for chunk in iter(lambda: stream.read(1 << 16), ""):
        parts = chunk.split(">")
        for part in parts[:-1]:
            buf.append(part)
            yield "".join(buf) + ">"
            buf = []
        buf.append(parts[-1])
    if buf and "".join(buf):
        yield "".join(buf)


def main():
    stdin = open(sys.stdin.fileno(), encoding="utf-8", errors="replace")
    out = sys.stdout
    in_text = False
    for rec in records(stdin):
        if "<text " in rec or "<text>" in rec:
            in_text = True
        if re.search(r"#redirect", rec, re.I):
            in_text = False
        if not in_text:
            continue
        if "</text>" in rec:
            in_text = False
        s = rec
        for pat, rep in SUBS:
            s = pat.sub(rep, s, count=1) if pat.pattern == "<.*>" else pat.sub(rep, s)
        s = " " + s + " "
        s = "".join(c.lower() if "A" <= c <= "Z" else c for c in s)
        for d, name in enumerate(DIGITS):
            s = s.replace(str(d), " " + name + " ")
        s = NON_ALPHA.sub(" ", s)
        out.write(s[:-1])
    out.write("\n")


if __name__ == "__main__":
    main()
