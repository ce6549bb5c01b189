"""
Tests de las Características de Circuitos Dinámicos
===================================================

Oráculo del circuito de ejemplo de tres qubits, equivalencia con la
enumeración explícita de ramas, modelos de probabilidad y Rényi-2.

Para ejecutar las pruebas:
pytest test_caracteristicas_dinamicas.py -v
"""

import math

import numpy as np
import pytest

import caracteristicas_dinamicas as cd
from caracteristicas_dinamicas import (
    NOMBRES_CARACTERISTICAS, ModeloRamas, branch_probability, communication,
    critical_two_qubit, dynamic_depth_ratio, entanglement_features, enumerate_branches,
    expected_depth, expected_ops, expected_two_qubit_gates, feature_vector, liveness,
    parallelism, renyi2_normalized, system_qubit_ratio,
)
from circuito_dinamico import Condicion, build_circuit, layer_schedule, profundidad
from generadores_benchmarks import gen_ghz, gen_ghz_reset, generar
from simulador_dinamico import run


@pytest.fixture
def ejemplo_ff():
    b = build_circuit(3, 1)
    b.h(0).h(2).cx(0, 1).cx(2, 1).measure(1, 0)
    with b.si_igual([0], "1") as rama:
        rama.x(2)
    return b.finalizar(system_qubits=[0, 2])


def circuito_aleatorio(rng: np.random.Generator, n: int = 4, max_condicionales: int = 3):
    """Circuito aleatorio con a lo sumo `max_condicionales` bloques condicionales."""
    b = build_circuit(n, n)
    medidos = []
    condicionales = 0
    objetivo = int(rng.integers(0, max_condicionales + 1))
    for _ in range(int(rng.integers(4, 14))):
        tipo = rng.random()
        if tipo < 0.4:
            b.gate(str(rng.choice(["H", "X", "S", "T"])), [int(rng.integers(n))])
        elif tipo < 0.65:
            a, c = rng.choice(n, size=2, replace=False)
            b.cx(int(a), int(c))
        elif tipo < 0.8:
            q = int(rng.integers(n))
            b.measure(q, q)
            medidos.append(q)
        elif tipo < 0.85:
            b.reset(int(rng.integers(n)))
        if medidos and condicionales < objetivo and rng.random() < 0.5:
            bits = sorted(set(int(x) for x in rng.choice(medidos, size=min(2, len(medidos)))))
            if rng.random() < 0.5:
                rama = b.si_paridad(bits)
            else:
                rama = b.si_igual(bits, "".join(str(int(x)) for x in rng.integers(0, 2, len(bits))))
            with rama:
                for _ in range(int(rng.integers(1, 4))):
                    if rng.random() < 0.3:
                        a, c = rng.choice(n, size=2, replace=False)
                        rama.cx(int(a), int(c))
                    else:
                        rama.x(int(rng.integers(n)))
            condicionales += 1
    b.h(0)
    return b.finalizar()


class TestOraculoEjemplo:
    """Las 24 características del circuito de ejemplo"""

    ESPERADO = [
        4.5, 5.5, 4.5, 5.5, 6.5, 2.0, 3.0,
        0.625, 7.5 / 14,
        2 / 3,
        1.0, 1.0,
        1 / 4.5, 2 / 5.5,
        1 / 9, 1 / 11,
        2 / 3, 2 / 3,
        2 / 4.5, 2 / 5.5, 2 / 6.5, 2.5 / 4.5, 2.5 / 5.5, 2.5 / 6.5,
    ]

    def test_vector_completo(self, ejemplo_ff):
        fv = feature_vector(ejemplo_ff)
        assert len(NOMBRES_CARACTERISTICAS) == 24
        for nombre, obtenido, esperado in zip(NOMBRES_CARACTERISTICAS, fv.valores, self.ESPERADO):
            assert obtenido == pytest.approx(esperado, abs=1e-9), nombre

    def test_profundidad(self, ejemplo_ff):
        bm = ModeloRamas.uniforme()
        assert expected_depth(ejemplo_ff, bm, False) == pytest.approx(4.5)
        assert expected_depth(ejemplo_ff, bm, True) == pytest.approx(5.5)

    def test_operaciones(self, ejemplo_ff):
        bm = ModeloRamas.uniforme()
        assert [expected_ops(ejemplo_ff, bm, v) for v in ("UNITARY", "QUANTUM", "ALL")] == \
            pytest.approx([4.5, 5.5, 6.5])
        with pytest.raises(ValueError):
            expected_ops(ejemplo_ff, bm, "CLASSICAL")

    def test_liveness_decrece_con_ff(self, ejemplo_ff):
        bm = ModeloRamas.uniforme()
        assert liveness(ejemplo_ff, bm, True) < liveness(ejemplo_ff, bm, False) == pytest.approx(0.625)

    def test_matriz_comunicacion(self, ejemplo_ff):
        valor, matriz = communication(ejemplo_ff, ModeloRamas.uniforme(), True)
        assert valor == pytest.approx(2 / 3)
        assert np.allclose(matriz.A, matriz.A.T)
        assert matriz.A[0, 1] == matriz.A[1, 2] == 1.0
        assert np.all(np.diag(matriz.A) == 0)

    def test_como_dict(self, ejemplo_ff):
        datos = feature_vector(ejemplo_ff).como_dict()
        assert datos["f06_n_total"] == 3.0
        assert datos["f09_system_ratio"] == pytest.approx(2 / 3)


class TestCasosTriviales:
    """Ejemplos pequeños de cada característica"""

    def test_sin_condicionales(self):
        c = build_circuit(2, 1).h(0).cx(0, 1).h(1).finalizar()
        bm = ModeloRamas.uniforme()
        assert expected_depth(c, bm, True) == layer_schedule(c).base_depth == 3

    def test_circuito_vacio(self):
        c = build_circuit(2, 1).finalizar()
        bm = ModeloRamas.uniforme()
        assert [expected_ops(c, bm, v) for v in ("UNITARY", "QUANTUM", "ALL")] == [0, 0, 0]
        with pytest.raises(ValueError):
            entanglement_features(c, bm)

    def test_solo_un_qubit(self):
        c = build_circuit(2, 1).h(0).x(1).finalizar()
        assert entanglement_features(c, ModeloRamas.uniforme()) == (0.0,) * 6

    def test_cx_disjuntas(self):
        c = build_circuit(4, 1).cx(0, 1).cx(2, 3).finalizar()
        assert critical_two_qubit(c, ModeloRamas.uniforme(), False) == pytest.approx(0.5)

    def test_sin_cx(self):
        c = build_circuit(2, 1).h(0).finalizar()
        assert critical_two_qubit(c, ModeloRamas.uniforme(), True) == 0.0

    def test_sin_mcm(self):
        c = build_circuit(2, 1).h(0).cx(0, 1).finalizar()
        assert dynamic_depth_ratio(c, ModeloRamas.uniforme(), True) == 0.0

    def test_comunicacion_simple(self):
        uno = build_circuit(2, 1).cx(0, 1).finalizar()
        vacio = build_circuit(2, 1).finalizar()
        assert communication(uno, ModeloRamas.uniforme(), False)[0] == pytest.approx(1.0)
        assert communication(vacio, ModeloRamas.uniforme(), False)[0] == 0.0
        with pytest.raises(ValueError):
            communication(build_circuit(1, 1).h(0).finalizar(), ModeloRamas.uniforme(), False)

    def test_liveness_un_qubit(self):
        c = build_circuit(1, 1).h(0).finalizar()
        assert liveness(c, ModeloRamas.uniforme(), False) == pytest.approx(1.0)

    def test_paralelismo(self):
        bm = ModeloRamas.uniforme()
        cadena = build_circuit(2, 1).h(0).x(0).finalizar()
        capa = build_circuit(4, 1).h(0).h(1).h(2).h(3).finalizar()
        assert parallelism(cadena, bm, False) == 0.0
        assert parallelism(capa, bm, False) == pytest.approx(1.0)

    def test_recorte_avisa(self, ejemplo_ff, monkeypatch):
        bm = ModeloRamas.uniforme()
        monkeypatch.setattr(cd, "_tiempo_vivo", lambda instrs: 1000.0)
        with pytest.warns(UserWarning, match="liveness .* se recorta"):
            assert liveness(ejemplo_ff, bm, False) == 1.0
        monkeypatch.setattr(cd, "expected_ops", lambda c, bm, variante: 1000.0)
        with pytest.warns(UserWarning, match="parallelism .* se recorta"):
            assert parallelism(ejemplo_ff, bm, False) == 1.0

    def test_razon_sistema(self):
        assert system_qubit_ratio(gen_ghz_reset(5).circuito) == 1.0
        c = build_circuit(2, 1).h(0).finalizar(system_qubits=[])
        assert system_qubit_ratio(c) == 0.0


class TestEnumeracionRamas:
    """Fórmulas cerradas frente a la enumeración explícita"""

    @pytest.mark.parametrize("modelo", ["uniform", "explicit"])
    def test_doscientos_circuitos(self, modelo):
        rng = np.random.default_rng(2026)
        for _ in range(200):
            c = circuito_aleatorio(rng)
            if modelo == "uniform":
                bm = ModeloRamas.uniforme()
            else:
                bm = ModeloRamas.explicito({ins.condicion: float(rng.random())
                                            for _, ins in c.condicionales})
            realizaciones = enumerate_branches(c, bm)
            assert sum(p for p, _ in realizaciones) == pytest.approx(1.0, abs=1e-12)

            plan = layer_schedule(c, include_ff=False)
            cuerpos = [ins.cuerpo for _, ins in c.condicionales]
            base = [i for i in c.instrucciones if not i.es_condicional]
            for ff in (False, True):
                profundidad_enum = sum(
                    p * (plan.base_depth + (len(cuerpos) if ff else 0)
                         + sum(profundidad(cu) for cu, t in zip(cuerpos, patron) if t))
                    for p, patron in realizaciones)
                assert expected_depth(c, bm, ff) == pytest.approx(profundidad_enum, abs=1e-12)

            def contar(instrs, variante):
                if variante == "UNITARY":
                    return sum(1 for i in instrs if i.es_compuerta)
                return sum(1 for i in instrs if not i.es_condicional)

            for variante in ("UNITARY", "QUANTUM", "ALL"):
                ops_enum = sum(
                    p * (contar(base, variante)
                         + sum(contar(cu, variante) for cu, t in zip(cuerpos, patron) if t)
                         + (len(cuerpos) if variante == "ALL" else 0))
                    for p, patron in realizaciones)
                assert expected_ops(c, bm, variante) == pytest.approx(ops_enum, abs=1e-12)

    def test_monotonia_y_normalizacion(self):
        rng = np.random.default_rng(11)
        bm = ModeloRamas.uniforme()
        for _ in range(50):
            c = circuito_aleatorio(rng)
            assert expected_depth(c, bm, True) >= expected_depth(c, bm, False)
            u, q, a = (expected_ops(c, bm, v) for v in ("UNITARY", "QUANTUM", "ALL"))
            assert a >= q >= u
            fv = feature_vector(c, bm).valores
            assert all(0.0 <= v <= 1.0 for v in fv[7:])
            assert all(v >= 0.0 for v in fv[:7])
            assert fv[5] <= fv[6]
            assert expected_two_qubit_gates(c, bm) <= u


class TestProbabilidadRamas:
    """Modelos uniforme, QEC y explícito"""

    def test_uniforme(self):
        bm = ModeloRamas.uniforme()
        assert branch_probability(Condicion((0,), "eq", "1"), bm) == 0.5
        assert branch_probability(Condicion((0, 1, 2), "eq", "101"), bm) == 0.125
        assert branch_probability(Condicion((0, 1, 2), "parity", "1"), bm) == 0.5

    def test_suma_de_ramas_de_igualdad(self):
        bm = ModeloRamas.uniforme()
        total = sum(branch_probability(Condicion((0, 1), "eq", v), bm)
                    for v in ("00", "01", "10", "11"))
        assert total <= 1.0

    def test_qec_mediana_ibm(self):
        bm = ModeloRamas.ruido_qec(1e-3, 5e-3, 1e-4, {0: 4, 1: 4})
        assert branch_probability(Condicion((0, 1), "eq", "10"), bm) == pytest.approx(0.0091)

    def test_qec_helios(self):
        bm = ModeloRamas.ruido_qec(8e-4, 1e-6, 2.5e-5, {0: 4})
        assert branch_probability(Condicion((0,), "eq", "1"), bm) == pytest.approx(0.00323, abs=1e-5)

    def test_qec_peso_maximo(self):
        bm = ModeloRamas.ruido_qec(1e-3, 0.0, 0.0, {0: 2, 1: 6})
        assert branch_probability(Condicion((0, 1), "eq", "11"), bm) == pytest.approx(6e-3)
        assert branch_probability(Condicion((0, 1), "eq", "10"), bm) == pytest.approx(2e-3)

    def test_no_cubierta(self, ejemplo_ff):
        bm = ModeloRamas.explicito({Condicion((0,), "eq", "0"): 0.3})
        assert not bm.cubre(ejemplo_ff)
        with pytest.raises(ValueError, match="no cubre"):
            feature_vector(ejemplo_ff, bm)

    def test_probabilidad_invalida(self):
        with pytest.raises(ValueError):
            ModeloRamas.explicito({Condicion((0,), "eq", "1"): 1.5})
        with pytest.raises(ValueError):
            ModeloRamas("binomial")

    def test_ida_y_vuelta_dict(self):
        for bm in (ModeloRamas.uniforme(),
                   ModeloRamas.ruido_qec(1e-3, 5e-3, 1e-4, {0: 4, 3: 2}),
                   ModeloRamas.explicito({Condicion((0, 1), "parity", "1"): 0.25})):
            assert ModeloRamas.desde_dict(bm.a_dict()) == bm


class TestRenyi:
    """Entropía de Rényi-2 normalizada"""

    def test_uniforme(self):
        assert renyi2_normalized({"00": 10, "01": 10, "10": 10, "11": 10}, 2) == pytest.approx(1.0)

    def test_masa_puntual(self):
        assert renyi2_normalized({"101": 4096}, 3) == 0.0

    def test_sesgada(self):
        assert renyi2_normalized({"0": 0.75, "1": 0.25}, 1) == pytest.approx(-math.log2(0.625))

    def test_limites(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            conteos = {format(i, "03b"): float(v) for i, v in enumerate(rng.random(8))}
            assert 0.0 <= renyi2_normalized(conteos, 2) <= 1.0

    def test_errores(self):
        with pytest.raises(ValueError):
            renyi2_normalized({}, 1)
        with pytest.raises(ValueError):
            renyi2_normalized({"0": 1}, 0)


class TestGHZ:
    """Profundidad base constante del GHZ dinámico"""

    def test_profundidad_base_constante(self):
        profundidades = {layer_schedule(gen_ghz(k).circuito).base_depth for k in (3, 5, 10)}
        assert len(profundidades) == 1

    def test_tamano_crece(self):
        assert feature_vector(gen_ghz(10).circuito).valores[6] > feature_vector(gen_ghz(3).circuito).valores[6]

    def test_operaciones_estrictas(self):
        c = gen_ghz(3).circuito
        bm = ModeloRamas.uniforme()
        u, q, a = (expected_ops(c, bm, v) for v in ("UNITARY", "QUANTUM", "ALL"))
        assert u < q < a


@pytest.mark.slow
class TestRenyiSimulado:
    """Rényi-2 de los bits de condición medidos en el simulador ideal"""

    @staticmethod
    def _renyi(familia: str, n_total: int, params=None) -> float:
        bench = generar(familia, n_total, params)[0]
        bits = bench.circuito.bits_condicion
        conteos = run(bench.circuito, 4096, seed=11).marginal(bits)
        return renyi2_normalized(conteos, len(bits))

    @pytest.mark.parametrize("familia,n_total", [
        ("GHZ", 5), ("GHZ", 11), ("CNOT_LADDER", 3), ("CNOT_LADDER", 11),
        ("FANOUT", 5), ("FANOUT", 7),
    ])
    def test_resultados_uniformes(self, familia, n_total):
        assert self._renyi(familia, n_total) >= 0.95

    def test_ipe_casi_determinista(self):
        assert self._renyi("IPE", 2, {"theta": 0.625, "m_bits": 3}) <= 0.3
