import pytest

from contax.context import FormalContext, load_pairs
from contax.taxonomy import Taxonomy

# Tourism toy knowledge as a binary incidence table.
TABLE1_OBJECTS = ["hotel", "apartment", "car", "bike", "excursion", "trip"]
TABLE1_ATTRIBUTES = ["bookable", "rentable", "driveable", "rideable", "joinable"]
TABLE1_INCIDENCE = [
    ("hotel", "bookable"),
    ("apartment", "bookable"),
    ("apartment", "rentable"),
    ("car", "bookable"),
    ("car", "rentable"),
    ("car", "driveable"),
    ("bike", "bookable"),
    ("bike", "rentable"),
    ("bike", "driveable"),
    ("bike", "rideable"),
    ("excursion", "bookable"),
    ("excursion", "joinable"),
    ("trip", "bookable"),
    ("trip", "joinable"),
]

TABLE1_PAIRS = "".join(
    f"{attr}\tattr\t{obj}\t1\n" for obj, attr in TABLE1_INCIDENCE
)

# 4-record corpus used for closed-form weighting checks.
FIXTURE4_PAIRS = (
    "book\tobj\thotel\t2\n"
    "book\tobj\ttrip\t2\n"
    "rent\tobj\tapartment\t1\n"
    "rent\tobj\tcar\t3\n"
)


@pytest.fixture
def table1():
    return load_pairs(TABLE1_PAIRS.splitlines())


@pytest.fixture
def table1_ctx():
    return FormalContext(TABLE1_OBJECTS, TABLE1_ATTRIBUTES, TABLE1_INCIDENCE)


@pytest.fixture
def fixture4():
    return load_pairs(FIXTURE4_PAIRS.splitlines())


# Reconstructed hierarchies behind the worked evaluation numbers.  The gold
# hierarchy names its inner concepts with nouns; the learned ones reuse the
# verb-derived names of the toy lattice, with the top concept as root.

def _tax(edges):
    return Taxonomy(edges)


@pytest.fixture
def o_ref():
    return _tax([
        ("hotel", "root"),
        ("object-to-rent", "root"),
        ("activity", "root"),
        ("apartment", "object-to-rent"),
        ("vehicle", "object-to-rent"),
        ("car", "vehicle"),
        ("two-wheeled vehicle", "vehicle"),
        ("bike", "two-wheeled vehicle"),
        ("excursion", "activity"),
        ("trip", "activity"),
    ])


@pytest.fixture
def o_perfect():
    # top concept "bookable" acts as the designated root
    return _tax([
        ("hotel", "root"),
        ("rentable", "root"),
        ("joinable", "root"),
        ("apartment", "rentable"),
        ("driveable", "rentable"),
        ("car", "driveable"),
        ("rideable", "driveable"),
        ("bike", "rideable"),
        ("excursion", "joinable"),
        ("trip", "joinable"),
    ])


@pytest.fixture
def o_down_r():
    # o_perfect with the rideable node removed
    return _tax([
        ("hotel", "root"),
        ("rentable", "root"),
        ("joinable", "root"),
        ("apartment", "rentable"),
        ("driveable", "rentable"),
        ("car", "driveable"),
        ("bike", "driveable"),
        ("excursion", "joinable"),
        ("trip", "joinable"),
    ])


@pytest.fixture
def o_down_p():
    # o_perfect with a superfluous planable node above trip
    return _tax([
        ("hotel", "root"),
        ("rentable", "root"),
        ("joinable", "root"),
        ("apartment", "rentable"),
        ("driveable", "rentable"),
        ("car", "driveable"),
        ("rideable", "driveable"),
        ("bike", "rideable"),
        ("excursion", "joinable"),
        ("planable", "joinable"),
        ("trip", "planable"),
    ])


@pytest.fixture
def o_trivial():
    return _tax([
        (leaf, "root")
        for leaf in ("hotel", "apartment", "car", "bike", "excursion", "trip")
    ])
