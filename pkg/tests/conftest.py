"""Shared fixtures: bundled scenarios and common collapsed variants."""

import dataclasses

import pytest

from egstherm.scenario import bundled_scenario


def collapse_to_single(sc, faces=1):
    """Route the scenario's entire flow through one fracture.

    Used for the isolated-fracture closed form: count 1, no spacing,
    the full total_rate, and the requested number of active faces.
    """
    fr = dataclasses.replace(sc.fractures, count=1, faces=faces, spacing=None)
    return dataclasses.replace(sc, fractures=fr)


def with_total_rate(sc, total_rate):
    op = dataclasses.replace(sc.operating, total_rate=total_rate)
    return dataclasses.replace(sc, operating=op)


@pytest.fixture(scope="session")
def valles():
    return bundled_scenario("valles_caldera")


@pytest.fixture(scope="session")
def zeinali():
    return bundled_scenario("zeinali")


@pytest.fixture(scope="session")
def valles_single(valles):
    return collapse_to_single(valles, faces=1)


@pytest.fixture(scope="session")
def valles_gringarten(valles):
    return collapse_to_single(valles, faces=2)
