"""DOT rendering of an explored patch."""
from typing import Iterable

from ..representations.atomic import Arrow, AtomicRep, VertexKey
from ..representations.verify import explore


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(rep: AtomicRep, seeds: Iterable[VertexKey], radius: int) -> str:
    """Solid V_k edges labelled k, dashed W edges, `phase` on non-trivial arrows"""
    region = explore(rep, seeds, radius)
    order = sorted(region, key=rep.sort_key)
    lines = [f"digraph {_quote(rep.name)} {{"]
    for v in order:
        lines.append(f"    {_quote(rep.format_key(v))};")
    for v in order:
        for gen in rep.generators():
            step = rep.forward(gen, v)
            if not isinstance(step, Arrow) or step.target not in region:
                continue
            attrs = [f'label="{gen}"'] if gen else ["style=dashed"]
            if not step.phase.is_one:
                attrs.append(f'phase="{step.phase}"')
            lines.append(
                f"    {_quote(rep.format_key(v))} -> {_quote(rep.format_key(step.target))} [{', '.join(attrs)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
