import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def plane_arrangements(draw, min_size=4, max_size=8, coef=2):
    """Essential arrangements in three variables with small integer forms."""
    from plusone.arrangement import Hyperplane, make_arrangement

    forms = draw(
        st.lists(
            st.tuples(*[st.integers(-coef, coef)] * 3).filter(any),
            min_size=min_size,
            max_size=3 * max_size,
            unique_by=lambda f: Hyperplane.from_form(f).form,
        )
    )
    forms = forms[:max_size]
    A = make_arrangement(3, forms)
    from hypothesis import assume

    assume(len(A) >= min_size and A.rank() == 3)
    return A
