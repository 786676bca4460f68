from percor.ops import OpCounter, counted_scope, counting, tally
from tests.conftest import needs_counting


class TestOpCounter:
    def test_add_merges_all_kinds(self):
        """Adding two counters sums each tally."""
        total = OpCounter("a", 1, 2, 3, 4) + OpCounter("b", 10, 20, 30, 40)
        assert total.as_dict() == {"divs": 11, "muls": 22, "adds": 33, "cmps": 44}
        assert total.label == "a"

    def test_zero(self):
        assert OpCounter().is_zero()
        assert not OpCounter(divisions=1).is_zero()


@needs_counting
class TestCounting:
    def test_tally_outside_a_scope_is_ignored(self):
        tally(div=5)

    def test_scope_collects_tallies(self):
        with counting("outer") as counter:
            tally(div=2, mul=3)
            tally(add=1)
        assert counter.divisions == 2
        assert counter.multiplications == 3
        assert counter.additions == 1

    def test_inner_scope_reports_to_parent(self):
        """Totals of a closed inner scope are added to the enclosing one."""
        with counting() as outer:
            tally(div=1)
            with counting() as inner:
                tally(div=4)
        assert inner.divisions == 4
        assert outer.divisions == 5

    def test_counted_scope_returns_result_and_counter(self):
        def body(n):
            tally(mul=n)
            return n * 2

        result, counter = counted_scope("body", body, 3)
        assert result == 6
        assert counter.multiplications == 3
        assert counter.label == "body"
