import hypothesis
import pytest

from evasilab.positions import build_position_table
from evasilab.properties import Property
from evasilab.scanner import scan_complement_closed

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def tbl3():
    return build_position_table(3)


@pytest.fixture(scope="session")
def tbl4():
    return build_position_table(4)


@pytest.fixture(scope="session")
def tbl5():
    return build_position_table(5)


@pytest.fixture(scope="session")
def ccl_scan_report():
    """The complement-closed sweep at n=5, run once per session."""
    return scan_complement_closed(5)


@pytest.fixture(scope="session")
def discovered_prop(ccl_scan_report):
    """The discovered 11-class nonevasive property of 5-vertex graphs."""
    smallest = min(ccl_scan_report.findings, key=lambda f: len(f.classes))
    return Property.from_class_ids(5, smallest.classes)
