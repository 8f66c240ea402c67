from src.observability.tracker import ReductionTrace, ReductionTracker


def _genus_tree(root_value: int) -> ReductionTrace:
    tracker = ReductionTracker()
    root = tracker.open("genus", {"genus": 1})
    for term, value in enumerate((1, 2)):
        child = tracker.open("base", {"term": term}, parent=root, term=term)
        tracker.close(child, value)
    tracker.close(root, root_value, subproblems=2)
    return tracker.trace


def test_replay_accepts_consistent_sums():
    trace = _genus_tree(3)
    assert trace.replay()
    assert trace.root.rule == "genus"
    assert trace.breakdown() == {"degree": 0, "genus": 1, "split": 0, "base": 2, "memo": 0}


def test_replay_rejects_a_wrong_total():
    assert not _genus_tree(4).replay()


def test_split_terms_multiply():
    tracker = ReductionTracker()
    root = tracker.open("base", {})
    for term, (left, right) in enumerate([(1, 2), (3, 1)]):
        for value in (left, right):
            tracker.close(tracker.open("base", {}, parent=root, term=term), value)
    tracker.close(root, 5, subproblems=2, rule="split")
    assert tracker.trace.replay()
    assert tracker.summary() == {
        "steps": 5,
        "breakdown": {"degree": 0, "genus": 0, "split": 1, "base": 4, "memo": 0},
        "value": "5",
    }


def test_unclosed_steps_do_not_replay():
    tracker = ReductionTracker()
    tracker.open("degree", {})
    assert not tracker.trace.replay()


def test_memo_hits_are_counted():
    tracker = ReductionTracker()
    root = tracker.open("degree", {})
    tracker.close(tracker.open("base", {}, parent=root), 2, source="memo")
    tracker.close(root, 2, subproblems=1)
    assert tracker.trace.replay()
    assert tracker.trace.breakdown()["memo"] == 1
