"""Deterministic synthetic microblog corpora for demos and testing.

Two generator families: ``planted_corpus`` builds a corpus with three known
events (two co-temporal ones that share vocabulary, one temporally disjoint)
plus background noise, and ``random_corpus`` builds small unstructured
corpora for randomized checking.  Both are pure functions of their seed.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone

from .lexicon import TitlesLexicon, normalize_phrase

WINDOW_START = "2025-03-01T00:00:00Z"
WINDOW_END = "2025-03-11T00:00:00Z"
_START = datetime(2025, 3, 1, tzinfo=timezone.utc)

_STOP_FILLER = ("the", "to", "a", "of", "in", "and")

_FIRST_NAMES = ("avery", "boone", "carys", "devi", "ember", "farid", "gale", "iris")
_LAST_NAMES = ("rao", "lee", "novak", "idris", "okafor", "silva", "tanaka", "ueda")

# (phrase, active-day range, inclusion rate for tweets inside the range, role)
# The flood phrases form a similarity chain: the early pair lives in the
# first two day-level subwindows, the late pair in the last two, and the
# bridge phrases straddle consecutive subwindow pairs so mutual
# nearest-neighbor edges connect the whole event.
_FLOOD_PHRASES = [
    ("embankment breach", 2.0, 3.6, 0.62, "early"),
    ("water levels", 2.0, 3.6, 0.58, "early"),
    ("weather alert", 2.0, 3.6, 0.20, "member"),
    ("rain warning", 2.0, 3.6, 0.17, "member"),
    ("sandbag walls", 2.5, 4.5, 0.20, "bridge"),
    ("pump stations", 3.0, 5.0, 0.34, "bridge"),
    ("power outage", 3.0, 5.0, 0.30, "bridge"),
    ("river gauge", 3.5, 5.5, 0.20, "bridge"),
    ("relief camps", 4.4, 6.0, 0.60, "late"),
    ("donation drive", 4.4, 6.0, 0.55, "late"),
    ("road closures", 4.4, 6.0, 0.20, "member"),
    ("boat patrol", 4.4, 6.0, 0.17, "member"),
]

_RELIEF_PHRASES = [
    ("flood relief", 2.0, 6.0, 0.62, "core"),
    ("rescue volunteers", 2.0, 6.0, 0.55, "core"),
    ("donation camps", 2.0, 6.0, 0.50, "member"),
    ("helpline numbers", 2.0, 6.0, 0.45, "member"),
    ("army convoy", 2.0, 6.0, 0.40, "member"),
    ("medical supplies", 2.0, 6.0, 0.36, "member"),
    ("power banks", 2.0, 6.0, 0.32, "member"),
]

_POLL_PHRASES = [
    ("city polls", 7.0, 9.5, 0.62, "core"),
    ("voter turnout", 7.0, 9.5, 0.55, "core"),
    ("exit surveys", 7.0, 9.5, 0.50, "member"),
    ("ballot count", 7.0, 9.5, 0.45, "member"),
    ("rally crowds", 7.0, 9.5, 0.40, "member"),
    ("manifesto launch", 7.0, 9.5, 0.36, "member"),
]

# lean inventories keep small corpora within the bursty-segment budget
# (15 slots at 200 tweets) while giving each event enough internal
# neighbors that its nearest-neighbor lists saturate inside the event
_LEAN_KEEP = {
    "flood": {
        "embankment breach", "water levels", "sandbag walls", "pump stations",
        "power outage", "river gauge", "relief camps", "donation drive",
    },
    "relief": {
        "flood relief", "rescue volunteers", "donation camps",
        "helpline numbers", "army convoy",
    },
    "polls": {"city polls", "voter turnout"},
}

_DECOY_TITLES = ["mountain pass", "silver screen", "quantum leap", "harbor lights"]

_ANCHOR_ROWS = [
    ("embankment breach", 26, 40),
    ("water levels", 22, 40),
    ("weather alert", 20, 40),
    ("rain warning", 18, 40),
    ("sandbag walls", 17, 40),
    ("pump stations", 19, 40),
    ("power outage", 21, 40),
    ("river gauge", 18, 40),
    ("relief camps", 26, 40),
    ("donation drive", 24, 40),
    ("road closures", 20, 40),
    ("boat patrol", 17, 40),
    ("flood relief", 27, 40),
    ("rescue volunteers", 24, 40),
    ("donation camps", 22, 40),
    ("helpline numbers", 20, 40),
    ("army convoy", 21, 40),
    ("medical supplies", 19, 40),
    ("power banks", 16, 40),
    ("city polls", 26, 40),
    ("voter turnout", 24, 40),
    ("exit surveys", 22, 40),
    ("ballot count", 21, 40),
    ("rally crowds", 19, 40),
    ("manifesto launch", 17, 40),
    ("flood", 32, 40),
    ("rescue", 28, 40),
    ("relief", 24, 40),
    ("donation", 20, 40),
    ("polls", 26, 40),
    ("voter", 22, 40),
    ("mountain pass", 12, 40),
    ("silver screen", 10, 40),
    ("ghost entry", 3, 0),
]


def _stamp(day: float) -> str:
    when = _START + timedelta(seconds=int(day * 86400))
    return when.strftime("%Y-%m-%dT%H:%M:%SZ")


def _noise_token(serial: int) -> str:
    # letters only so a hashtag rendering cannot split it at digit boundaries
    digits = []
    value = serial
    for _ in range(4):
        value, rem = divmod(value, 26)
        digits.append(chr(ord("a") + rem))
    return "zq" + "".join(reversed(digits))


def _hashtagify(phrase: str) -> str:
    return "#" + "".join(word.capitalize() for word in phrase.split())


def _make_users(rng: random.Random, prefix: str, count: int) -> list[tuple[str, str | None, int]]:
    users = []
    for i in range(count):
        name = None
        if rng.random() < 0.75:
            name = f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}".title()
        followers = int(10 ** rng.uniform(1.0, 4.5))
        users.append((f"{prefix}{i:04d}", name, followers))
    return users


def _record(
    rng: random.Random,
    serial: int,
    day: float,
    chunks: list[str],
    user: tuple[str, str | None, int],
    base_retweets: int,
    mention_pool: list[tuple[str, str | None, int]],
    noise_serial: list[int],
    noise_rate: float = 0.0,
    mention_rate: float = 0.0,
) -> dict:
    rendered = []
    for chunk in chunks:
        if rng.random() < 0.15:
            rendered.append(_hashtagify(chunk))
        else:
            rendered.append(chunk)
    rng.shuffle(rendered)
    words: list[str] = []
    for piece in rendered:
        if words and rng.random() < 0.4:
            words.append(rng.choice(_STOP_FILLER))
        words.append(piece)
    if rng.random() < noise_rate:
        noise_serial[0] += 1
        words.append(_noise_token(noise_serial[0]))
    if mention_pool and rng.random() < mention_rate:
        target = rng.choice(mention_pool)
        words.append(f"@{target[0]}")
    user_id, user_name, followers = user
    record = {
        "id": f"t{serial:06d}",
        "text": " ".join(words),
        "user_id": user_id,
        "followers_count": followers,
        "retweet_count": base_retweets,
        "created_at": _stamp(day),
        "is_retweet": False,
    }
    if user_name is not None:
        record["user_name"] = user_name
    return record


def _retweet_records(
    rng: random.Random,
    originals: list[tuple[str, float]],
    pool: list[tuple[str, str | None, int]],
    serial_start: int,
    rate: float = 0.3,
) -> list[dict]:
    records = []
    serial = serial_start
    for original_id, day in originals:
        if rng.random() >= rate:
            continue
        for _ in range(rng.randint(1, 4)):
            user_id, user_name, followers = rng.choice(pool)
            record = {
                "id": f"r{serial:06d}",
                "text": "rt",
                "user_id": user_id,
                "followers_count": followers,
                "retweet_count": 0,
                "created_at": _stamp(day + rng.uniform(0.0, 0.8)),
                "is_retweet": True,
                "retweet_of": original_id,
            }
            if user_name is not None:
                record["user_name"] = user_name
            records.append(record)
            serial += 1
    return records


def planted_corpus(
    seed: int = 20250301, total: int = 5000, rich: bool = True
) -> tuple[list[str], list[str], list[tuple[str, int, int]], dict]:
    """Corpus with three engineered events over a ten-day window.

    ``flood`` and ``relief`` run on days 2-6 and share vocabulary through
    their phrases; ``polls`` runs on days 7-9.5 with disjoint vocabulary.
    The flood event carries an early topic (days 2-3.2) and a late topic
    (days 4.6-6) whose segments never share a day-level subwindow.  Returns
    (record lines, title list, anchor rows, layout info).
    """
    rng = random.Random(seed)
    plans = {
        "flood": [p for p in _FLOOD_PHRASES if rich or p[0] in _LEAN_KEEP["flood"]],
        "relief": [p for p in _RELIEF_PHRASES if rich or p[0] in _LEAN_KEEP["relief"]],
        "polls": [p for p in _POLL_PHRASES if rich or p[0] in _LEAN_KEEP["polls"]],
    }
    spans = {"flood": (2.0, 6.0), "relief": (2.0, 6.0), "polls": (7.0, 9.5)}
    shares = {"flood": 0.30, "relief": 0.25, "polls": 0.20}

    pools = {
        "flood": _make_users(rng, "a", max(8, total // 12)),
        "relief": _make_users(rng, "b", max(8, total // 14)),
        "polls": _make_users(rng, "c", max(8, total // 16)),
        "background": _make_users(rng, "g", max(10, total // 6)),
    }

    lines: list[dict] = []
    originals: dict[str, list[tuple[str, float]]] = {name: [] for name in plans}
    noise_serial = [0]
    serial = 0

    for name, plan in plans.items():
        count = int(total * shares[name])
        lo, hi = spans[name]
        for _ in range(count):
            day = rng.uniform(lo, hi)
            chunks = [
                phrase
                for phrase, p_lo, p_hi, rate, _ in plan
                if p_lo <= day < p_hi and rng.random() < rate
            ]
            if not chunks:
                chunks = [plan[0][0]]
            user = rng.choice(pools[name])
            record = _record(
                rng, serial, day, chunks, user,
                rng.choice([0, 1, 1, 2, 3, 5, 8]),
                pools[name], noise_serial,
            )
            lines.append(record)
            originals[name].append((record["id"], day))
            serial += 1

    background_count = total - sum(int(total * shares[name]) for name in plans)
    for _ in range(background_count):
        day = rng.uniform(0.0, 10.0)
        noise_serial[0] += 1
        chunks = [_noise_token(noise_serial[0])]
        user = rng.choice(pools["background"])
        record = _record(rng, serial, day, chunks, user, 0, [], noise_serial)
        lines.append(record)
        serial += 1

    # a few deliberately out-of-window originals exercise manifest counting
    for _ in range(max(2, total // 500)):
        day = rng.choice([-0.4, 10.2, 11.0])
        user = rng.choice(pools["background"])
        noise_serial[0] += 1
        record = _record(
            rng, serial, day, [_noise_token(noise_serial[0])], user, 0, [], noise_serial
        )
        lines.append(record)
        serial += 1

    retweets: list[dict] = []
    for name in plans:
        retweets.extend(
            _retweet_records(rng, originals[name], pools[name], len(retweets))
        )
    records = lines + retweets
    rng.shuffle(records)

    titles = sorted(
        {phrase for plan in plans.values() for phrase, *_ in plan} | set(_DECOY_TITLES)
    )
    info = {
        "window": (WINDOW_START, WINDOW_END),
        "spans": spans,
        "events": {
            name: {
                "phrases": [phrase for phrase, *_ in plan],
                "cores": [p[0] for p in plan if p[4] == "core"],
                "early_topic": [p[0] for p in plan if p[4] == "early"],
                "late_topic": [p[0] for p in plan if p[4] == "late"],
            }
            for name, plan in plans.items()
        },
    }
    return [json.dumps(r) for r in records], titles, list(_ANCHOR_ROWS), info


def random_corpus(
    seed: int, n_tweets: int | None = None
) -> tuple[list[str], list[str], list[tuple[str, int, int]], dict]:
    """Small unstructured corpus for randomized equivalence checking.

    Mixes hot phrases with concentrated activity spans, generic vocabulary
    chatter, hashtag renderings, mentions, retweet records, and a few
    out-of-window originals.  Returns the same shape as planted_corpus.
    """
    rng = random.Random(seed)
    n = n_tweets if n_tweets is not None else rng.randint(40, 220)
    subwindows = rng.choice([3, 4, 5, 6, 8, 10])
    vocab = [f"w{i:02d}" for i in range(40)]

    hot: list[tuple[str, float, float, float]] = []
    for _ in range(rng.randint(1, 4)):
        length = rng.choice([1, 2, 2, 3])
        phrase = " ".join(rng.sample(vocab, length))
        lo = rng.uniform(0.0, 8.0)
        hi = min(10.0, lo + rng.uniform(0.5, 2.5))
        hot.append((phrase, lo, hi, rng.uniform(0.4, 0.9)))

    titles = {phrase for phrase, *_ in hot if " " in phrase}
    while len(titles) < 10:
        titles.add(" ".join(rng.sample(vocab, rng.choice([2, 3]))))
    anchor_rows: list[tuple[str, int, int]] = []
    for phrase in sorted(titles):
        if rng.random() < 0.7:
            occurrences = rng.randint(1, 50)
            anchor_rows.append((phrase, rng.randint(0, occurrences), occurrences))
    for word in rng.sample(vocab, 8):
        occurrences = rng.randint(1, 50)
        anchor_rows.append((word, rng.randint(0, occurrences), occurrences))

    users = _make_users(rng, "u", max(6, n // 3))
    records: list[dict] = []
    originals: list[tuple[str, float]] = []
    noise_serial = [0]
    serial = 0
    for _ in range(n):
        chunks: list[str] = []
        if hot and rng.random() < 0.5:
            phrase, lo, hi, rate = rng.choice(hot)
            day = rng.uniform(lo, hi)
            if rng.random() < rate:
                chunks.append(phrase)
            if len(hot) > 1 and rng.random() < 0.2:
                chunks.append(rng.choice(hot)[0])
        else:
            day = rng.uniform(0.0, 10.0)
        chunks.extend(
            rng.choice(vocab) for _ in range(rng.randint(2, 6))
        )
        user = rng.choice(users)
        record = _record(
            rng, serial, day, chunks, user,
            rng.choice([0, 0, 1, 2, 6]),
            users, noise_serial,
            noise_rate=0.35, mention_rate=0.12,
        )
        records.append(record)
        originals.append((record["id"], day))
        serial += 1
    for _ in range(max(1, n // 25)):
        user = rng.choice(users)
        record = _record(
            rng, serial, rng.choice([-0.5, 10.3]), [rng.choice(vocab)], user, 0,
            [], noise_serial,
        )
        records.append(record)
        serial += 1
    records.extend(_retweet_records(rng, originals, users, 0, rate=0.18))
    rng.shuffle(records)

    info = {"window": (WINDOW_START, WINDOW_END), "subwindows": subwindows}
    return [json.dumps(r) for r in records], sorted(titles), anchor_rows, info


def lexicon_from_rows(
    titles: list[str], anchor_rows: list[tuple[str, int, int]], max_len: int = 5
) -> TitlesLexicon:
    """In-memory lexicon with the same normalization as the file builder."""
    title_set = set()
    for title in titles:
        phrase = normalize_phrase(title)
        if phrase and phrase.count(" ") < max_len:
            title_set.add(phrase)
    anchors: dict[str, float] = {}
    for raw_phrase, links, occurrences in anchor_rows:
        if occurrences == 0:
            continue
        phrase = normalize_phrase(raw_phrase)
        if phrase and phrase.count(" ") < max_len:
            anchors[phrase] = min(1.0, max(0.0, links / occurrences))
    return TitlesLexicon(frozenset(title_set), anchors, max_len)


def write_corpus(path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def write_lexicon_sources(
    titles_path, anchors_path, titles: list[str], anchor_rows: list[tuple[str, int, int]]
) -> None:
    with open(titles_path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(titles) + "\n")
    with open(anchors_path, "w", encoding="utf-8") as handle:
        handle.write(
            "\n".join(f"{p}\t{links}\t{occ}" for p, links, occ in anchor_rows) + "\n"
        )
