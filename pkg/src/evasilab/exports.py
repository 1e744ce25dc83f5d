"""Serialisation of strategy trees: JSON documents and DOT renderings."""

from __future__ import annotations

from .solver import StrategyLeaf, StrategyNode, StrategyTree

VERDICT_VALUES = ("in", "out")


def strategy_to_json_dict(tree: StrategyTree) -> dict:
    """Nested {"question":[u,v],"absent":...,"present":...} / {"verdict":...} document."""
    if isinstance(tree, StrategyLeaf):
        return {"verdict": tree.verdict}
    return {
        "question": list(tree.question),
        "absent": strategy_to_json_dict(tree.absent),
        "present": strategy_to_json_dict(tree.present),
    }


def strategy_from_json_dict(doc: dict) -> StrategyTree:
    """Inverse of strategy_to_json_dict; validates the document shape."""
    if not isinstance(doc, dict):
        raise ValueError("strategy node must be a JSON object")
    if "verdict" in doc:
        if doc["verdict"] not in VERDICT_VALUES:
            raise ValueError(f"leaf verdict must be one of {VERDICT_VALUES}, got {doc['verdict']!r}")
        return StrategyLeaf(doc["verdict"])
    if "question" not in doc or "absent" not in doc or "present" not in doc:
        raise ValueError('strategy node needs "question", "absent" and "present"')
    q = doc["question"]
    if not (isinstance(q, (list, tuple)) and len(q) == 2 and all(isinstance(x, int) for x in q)):
        raise ValueError(f'"question" must be a [u, v] pair of integers, got {q!r}')
    return StrategyNode(
        question=(q[0], q[1]),
        absent=strategy_from_json_dict(doc["absent"]),
        present=strategy_from_json_dict(doc["present"]),
    )


def strategy_to_dot(tree: StrategyTree, title: str = "strategy") -> str:
    """DOT digraph of the decision tree.

    Branch edges follow the board styling convention: an edge answered
    present is drawn solid, an answered absent edge dashed.
    """
    lines = [f'digraph "{title}" {{', "  node [fontname=Helvetica];"]
    counter = 0

    def emit(node: StrategyTree) -> int:
        nonlocal counter
        me = counter
        counter += 1
        if isinstance(node, StrategyLeaf):
            label = "in P" if node.verdict == "in" else "not in P"
            lines.append(f'  n{me} [shape=box label="{label}"];')
            return me
        u, v = node.question
        lines.append(f'  n{me} [shape=ellipse label="{u}-{v}?"];')
        a = emit(node.absent)
        lines.append(f'  n{me} -> n{a} [style=dashed label="absent"];')
        p = emit(node.present)
        lines.append(f'  n{me} -> n{p} [style=solid label="present"];')
        return me

    emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"
