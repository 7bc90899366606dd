# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    graph

Description:
    Weighted undirected sensory graph. An edge (i, j, w) means that agents i
    and j measure their relative displacement and velocity with the weight w.
    The graph is immutable and must be connected.

Classes:
    SensoryGraph

Author:
    formation-resilience developers
"""
import logging
from typing import Iterable
from typing import Sequence
from typing import Tuple

import numpy as np

from ..exception import ConfigurationError
from ..exception import DisconnectedGraphError

logger = logging.getLogger(__name__)

CONNECTIVITY_TOLERANCE = 1e-8
"""Algebraic connectivity above which a graph is declared connected."""

MIN_AGENT_COUNT = 3


def laplacian_spectrum(laplacian: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Laplacian, sorted ascending.

    Args:
        laplacian (np.ndarray): symmetric Laplacian matrix

    Returns:
        np.ndarray: eigenvalues, the first one is close to zero
    """
    return np.sort(np.linalg.eigvalsh(laplacian))


def algebraic_connectivity(
    laplacian: np.ndarray, tolerance: float = CONNECTIVITY_TOLERANCE
) -> float:
    """Second smallest eigenvalue of the Laplacian.

    Args:
        laplacian (np.ndarray): symmetric Laplacian matrix
        tolerance (float): connectivity tolerance

    Raises:
        DisconnectedGraphError: when the second eigenvalue is below the tolerance

    Returns:
        float: the algebraic connectivity
    """
    lambda_2 = float(laplacian_spectrum(laplacian)[1])
    if lambda_2 <= tolerance:
        raise DisconnectedGraphError(lambda_2)
    return lambda_2


class SensoryGraph:
    """Weighted undirected measurement topology.

    Args:
        weights (np.ndarray): symmetric nonnegative N x N matrix, zero diagonal

    Raises:
        ConfigurationError: the weight matrix is not valid
        DisconnectedGraphError: the graph is not connected
    """

    def __init__(self, weights: np.ndarray):
        weights = np.array(weights, dtype=float)
        SensoryGraph._check_weights(weights)
        weights.setflags(write=False)
        self.__weights = weights
        self.__adjacency = weights > 0
        self.__adjacency.setflags(write=False)
        self.__neighbors: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(j) for j in np.flatnonzero(row)) for row in self.__adjacency
        )
        self.__laplacian = np.diag(weights.sum(axis=1)) - weights
        self.__laplacian.setflags(write=False)
        self.__algebraic_connectivity = algebraic_connectivity(self.__laplacian)
        logger.debug(
            f"sensory graph with {self.agent_count} agents, "
            f"lambda_2={self.__algebraic_connectivity:.6f}"
        )

    @staticmethod
    def _check_weights(weights: np.ndarray):
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise ConfigurationError(
                f"weight matrix must be square, got {weights.shape}", "graph"
            )
        if weights.shape[0] < MIN_AGENT_COUNT:
            raise ConfigurationError(
                f"at least {MIN_AGENT_COUNT} agents are required", "graph"
            )
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ConfigurationError("weights must be finite and >= 0", "graph")
        if np.any(np.diag(weights) != 0):
            raise ConfigurationError("self loops are not allowed", "graph")
        if not np.array_equal(weights, weights.T):
            raise ConfigurationError("weights must be symmetric", "graph")

    @classmethod
    def from_edges(
        cls, agent_count: int, edges: Iterable[Tuple[int, int, float]]
    ) -> "SensoryGraph":
        """Builds a graph from an edge list with 0-based agent indices.

        Args:
            agent_count (int): number of agents
            edges (Iterable[Tuple[int, int, float]]): entries (i, j, w)

        Raises:
            ConfigurationError: index out of range, self loop or duplicate edge

        Returns:
            SensoryGraph: the graph
        """
        weights = np.zeros((agent_count, agent_count))
        for number, (i, j, weight) in enumerate(edges):
            field = f"graph.edges[{number}]"
            if not (0 <= i < agent_count and 0 <= j < agent_count):
                raise ConfigurationError(
                    f"agent index out of range [0, {agent_count})", field
                )
            if i == j:
                raise ConfigurationError("self loops are not allowed", field)
            if weights[i, j] != 0:
                raise ConfigurationError(f"duplicate edge ({i}, {j})", field)
            if weight <= 0:
                raise ConfigurationError("weight must be > 0", field)
            weights[i, j] = weights[j, i] = weight
        return cls(weights)

    @classmethod
    def ring(cls, agent_count: int, weight: float = 1.0) -> "SensoryGraph":
        """Ring topology where agent i measures agents i-1 and i+1."""
        return cls.from_edges(
            agent_count,
            [(i, (i + 1) % agent_count, weight) for i in range(agent_count)],
        )

    @property
    def agent_count(self) -> int:
        """Number of agents N."""
        return self.__weights.shape[0]

    @property
    def weights(self) -> np.ndarray:
        """Read-only weight matrix."""
        return self.__weights

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean matrix, True where w_ij > 0."""
        return self.__adjacency

    @property
    def laplacian(self) -> np.ndarray:
        """Read-only weighted Laplacian."""
        return self.__laplacian

    @property
    def algebraic_connectivity(self) -> float:
        """Second smallest eigenvalue of the Laplacian."""
        return self.__algebraic_connectivity

    def neighbors(self, agent: int) -> Tuple[int, ...]:
        """Neighbors of an agent in ascending order."""
        return self.__neighbors[agent]

    def weight(self, i: int, j: int) -> float:
        return float(self.__weights[i, j])

    @property
    def edges(self) -> Sequence[Tuple[int, int, float]]:
        """Edges (i, j, w) with i < j."""
        rows, cols = np.nonzero(np.triu(self.__weights))
        return [
            (int(i), int(j), float(self.__weights[i, j]))
            for i, j in zip(rows, cols)
        ]

    def __repr__(self) -> str:
        return f"SensoryGraph(agent_count={self.agent_count}, edges={self.edges})"


def build_laplacian(graph: SensoryGraph) -> np.ndarray:
    """Weighted Laplacian L = D - W of a sensory graph.

    Args:
        graph (SensoryGraph): the graph

    Returns:
        np.ndarray: a writable copy of the Laplacian
    """
    return np.array(graph.laplacian)
