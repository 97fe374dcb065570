import pytest

import plsphere


def test_rp2_homology_and_recognition():
    k = plsphere.rp2_6()
    assert k.f_vector() == [6, 15, 10]
    assert k.euler_characteristic() == 1
    h = plsphere.homology(k)
    assert h["betti"] == [1, 0, 0]
    assert h["torsion"] == [[], [2], []]
    assert plsphere.homology(k, "GF2")["betti"] == [1, 1, 1]
    v = plsphere.recognize(k)
    assert v["answer"] == "NO"
    assert v["certificate"] == "NonSphericalHomology"


def test_complex_construction_and_specs(tmp_path):
    k = plsphere.SimplicialComplex([[2, 1, 0], [1, 2, 3]])
    assert k.facets == [[0, 1, 2], [1, 2, 3]]
    assert k.dim == 2 and k.n_vertices == 4
    path = tmp_path / "k.fct"
    k.write(str(path))
    assert plsphere.SimplicialComplex.read(str(path)) == k
    assert plsphere.SimplicialComplex.from_spec("bd_simplex:3") == plsphere.boundary_of_simplex(3)
    assert plsphere.SimplicialComplex.parse('{"facets": [[0, 1]]}').facets == [[0, 1]]
    assert plsphere.boundary_of_simplex(3).link([0]).facets == [[1, 2], [1, 3], [2, 3]]


def test_errors_are_value_errors():
    with pytest.raises(plsphere.Error):
        plsphere.SimplicialComplex([[0, 0, 1]])
    with pytest.raises(ValueError):
        plsphere.SimplicialComplex.from_spec("nonsense:3")


def test_smith_normal_form():
    assert plsphere.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert plsphere.smith_normal_form([[0, 0], [0, 0]]) == []


def test_morse():
    r = plsphere.random_discrete_morse(plsphere.simplex(4), seed=3)
    assert r["vector"] == [1, 0, 0, 0, 0] and r["collapsible"]
    spectrum = plsphere.morse_spectrum(plsphere.saw_blade(2), 50, seed=1)
    assert sum(count for _, count in spectrum) == 50
    assert all(vector != (1, 0, 0) for vector, _ in spectrum)
    assert spectrum == plsphere.morse_spectrum(plsphere.saw_blade(2), 50, seed=1, threads=2)


def test_pi1():
    assert plsphere.pi1(plsphere.boundary_of_simplex(3))["verdict"] == "Trivial"
    rp = plsphere.pi1(plsphere.rp2_6())
    assert rp["verdict"] == "NonTrivial" and rp["witness"] == "Z/2"
    g3 = plsphere.simplify_presentation("generators: 2\n1 2 1 -2 -1 -2\n1 1 1 -2 -2\n")
    assert g3["verdict"] == "Unknown"


def test_flips_and_manifold_check():
    k = plsphere.perturbed_sphere(3, 8, 30, 0, 2)
    r = plsphere.bistellar_simplify(k, seed=1)
    assert r["reached_simplex_boundary"]
    assert r["complex"].f_vector() == [5, 10, 10, 5]
    assert r["trajectory"].startswith("round\tmove_dim\tface\treplacement\tf_vector\n")
    m = plsphere.is_combinatorial_manifold(plsphere.suspension(plsphere.rp2_6()))
    assert m["answer"] == "NO"
    assert len(m["face"]) == 1
    assert m["link"] == plsphere.rp2_6()
    assert plsphere.recognize(plsphere.boundary_of_simplex(5))["answer"] == "YES"
