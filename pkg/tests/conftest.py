from fractions import Fraction

from hypothesis import strategies as st

from schubsm.symra import RatFunc, Ring

RING = Ring(1, 3)
Y_RING = Ring(0, 3)


def _forms(ring: Ring):
    names = [str(ring.variable(v)) for v in range(ring.nvars)]
    pairs = [(a, b) for a in names for b in names if a < b]
    return st.builds(
        lambda ab, c, sign: ring.form({ab[0]: sign, ab[1]: -sign}, c),
        st.sampled_from(pairs),
        st.integers(0, 1),
        st.sampled_from([1, -1]),
    )


def _polys(ring: Ring):
    names = [str(ring.variable(v)) for v in range(ring.nvars)]
    term = st.tuples(st.integers(-3, 3), st.lists(st.sampled_from(names), max_size=2))

    def build(terms):
        out = ring.zero()
        for c, vs in terms:
            t = ring.const(c)
            for v in vs:
                t = t * ring.var(v)
            out = out + t
        return out

    return st.lists(term, min_size=1, max_size=4).map(build)


def ratfuncs(ring: Ring = RING):
    def build(num, dens, scale):
        out = num * scale
        for f in dens:
            out = out / RatFunc.from_form(ring, f)
        return out

    return st.builds(
        build,
        _polys(ring),
        st.lists(_forms(ring), max_size=3),
        st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4),
    )


def nonzero_ratfuncs(ring: Ring = RING):
    return ratfuncs(ring).filter(lambda r: not r.is_zero())
