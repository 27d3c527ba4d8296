from apps.charts.charts import Chart, Edge, Vertex, VertexKind
from apps.factorization.factorizations import Factorization, canonical_form, scramble
from apps.sl2z.matrices import S1, S2, Sl2zElement


class TestUtil:
    def unchecked_factorization(entries):
        # skips the conjugate-of-s1 check, for feeding broken input to invariant guards
        factorization = object.__new__(Factorization)
        object.__setattr__(factorization, "entries", tuple(entries))
        return factorization

    def perutz_factorization():
        return Factorization.of(S2, Sl2zElement(3, -1, 4, -1))

    def braid_relation_factorization():
        return Factorization.of(S2, S1, S2, S1, S2, S1)

    def conjugated_factorization():
        # (s1, s2)^3 conjugated by s1^5, entries up to 25
        return Factorization.of(S1, Sl2zElement(6, -1, 25, -4)) * 3

    def scrambled(p, q, k, seed=0, steps=200):
        return scramble(canonical_form(p, q, k), seed=seed, steps=steps)

    def write_file(directory, name, content):
        path = directory / name
        path.write_text(content)
        return path

    def deg6_chart(labels=(1, 2, 1, 2, 1, 2), boundary_order=("d3", "d4", "d5")):
        # three black vertices feed v at slots 0-2, v feeds three boundary vertices from slots 3-5
        vertices = [Vertex("v", VertexKind.DEG6)]
        edges = []
        for slot, label in enumerate(labels):
            if slot < 3:
                vertices.append(Vertex(f"k{slot}", VertexKind.BLACK))
                edges.append(Edge(f"e{slot}", label, f"k{slot}", 0, "v", slot))
            else:
                vertices.append(Vertex(f"d{slot}", VertexKind.BOUNDARY))
                edges.append(Edge(f"e{slot}", label, "v", slot, f"d{slot}", 0))
        return Chart(tuple(vertices), tuple(edges), tuple(boundary_order))

    def inward_black_chart():
        return Chart(
            vertices=(Vertex("b", VertexKind.BLACK), Vertex("d", VertexKind.BOUNDARY)),
            edges=(Edge("e", 1, "d", 0, "b", 0),),
            boundary_order=("d",),
        )

    def interleaved_loops_chart():
        return Chart(
            vertices=(Vertex("v", VertexKind.DEG6),),
            edges=(
                Edge("a", 1, "v", 0, "v", 2),
                Edge("b", 2, "v", 1, "v", 3),
                Edge("c", 1, "v", 4, "v", 5),
            ),
        )
