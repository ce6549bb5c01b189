"""
Tests de los Códigos Correctores
================================

Tablas de decodificación, síndromes y corrección exhaustiva de todos los
errores de peso 1 en simulación sin ruido.

Para ejecutar las pruebas:
pytest test_codigos_correctores.py -v
pytest test_codigos_correctores.py -v -m "not slow"
"""

import pytest

from codigos_correctores import (
    CHEQUEOS_CINCO, TablasCodigo, circuito_cinco_qubits, circuito_repeticion, circuito_steane,
    decodificador_minimo, errores_simples, verificar_decodificador,
)
from puntajes_fidelidad import qec_score
from simulador_dinamico import run


DISPAROS = 64


class TestTablas:
    """Decodificadores de búsqueda"""

    @pytest.mark.parametrize("qec", [
        circuito_repeticion(3, "ONE"), circuito_repeticion(5, "PLUS"),
        circuito_steane("ONE"), circuito_steane("PLUS"),
        circuito_cinco_qubits("ZERO"), circuito_cinco_qubits("ONE"),
    ], ids=["rep3", "rep5", "steane1", "steane+", "cinco0", "cinco1"])
    def test_decodificador_completo(self, qec):
        assert verificar_decodificador(qec.tablas) == []

    def test_sindrome_steane(self):
        tablas = circuito_steane("ONE").tablas
        assert tablas.sindrome("XIIIIII") == "001000"
        assert tablas.decodificador["001000"] == "XIIIIII"
        assert tablas.sindrome("IIIIIIY") == "111111"
        assert tablas.decodificador["111111"] == "IIIIIIY"

    def test_sindromes_cinco_distintos(self):
        tablas = circuito_cinco_qubits("ZERO").tablas
        sindromes = {tablas.sindrome(e) for e in errores_simples(5)}
        assert len(sindromes) == 15
        assert "0000" not in sindromes

    def test_cobertura_incompleta(self):
        with pytest.raises(ValueError, match="no cubre"):
            TablasCodigo("X", ("ZZI", "IZZ"), {"X": "XXX", "Z": "ZII"}, {"00": "III"}, (0, 1))

    def test_decodificador_minimo(self):
        tabla = decodificador_minimo(("ZZI", "IZZ"), ["III", "XII", "IXI", "IIX", "XXI"])
        assert tabla == {"00": "III", "10": "XII", "11": "IXI", "01": "IIX"}

    def test_ida_y_vuelta_dict(self):
        tablas = circuito_cinco_qubits("ONE").tablas
        assert TablasCodigo.desde_dict(tablas.a_dict()) == tablas

    def test_errores_simples(self):
        assert errores_simples(2, "XZ") == ["XI", "ZI", "IX", "IZ"]


class TestConstruccion:
    """Estructura de los circuitos"""

    def test_tamanos(self):
        assert circuito_repeticion(3, "ONE").circuito.num_qubits == 5
        assert circuito_repeticion(5, "ONE").circuito.num_qubits == 9
        assert circuito_steane("ONE").circuito.num_qubits == 14
        assert circuito_cinco_qubits("ZERO").circuito.num_qubits == 11

    def test_condicionales(self):
        assert len(circuito_repeticion(3, "ONE").circuito.condicionales) == 3
        assert len(circuito_repeticion(5, "ONE").circuito.condicionales) == 15
        assert len(circuito_steane("ONE").circuito.condicionales) == 14
        assert len(circuito_cinco_qubits("ZERO").circuito.condicionales) == 15

    def test_pesos(self):
        assert set(circuito_repeticion(3, "ONE").pesos.values()) == {2}
        assert set(circuito_steane("PLUS").pesos.values()) == {4}
        assert set(circuito_cinco_qubits("ZERO").pesos.values()) == {4}

    def test_argumentos_invalidos(self):
        with pytest.raises(ValueError):
            circuito_repeticion(4, "ONE")
        with pytest.raises(ValueError):
            circuito_repeticion(3, "ZERO")
        with pytest.raises(ValueError):
            circuito_steane("MINUS")
        with pytest.raises(ValueError):
            circuito_cinco_qubits("PLUS")
        with pytest.raises(ValueError):
            circuito_steane("ONE", error=("W", 0))
        with pytest.raises(ValueError):
            circuito_cinco_qubits("ZERO", error=("X", 5))

    def test_chequeos_conmutan(self):
        from tableau_pauli import conmutan
        for a in CHEQUEOS_CINCO:
            for b in CHEQUEOS_CINCO:
                assert conmutan(a, b)


@pytest.mark.slow
class TestExhaustivo:
    """Cada error corregible devuelve fidelidad lógica 1 sin ruido"""

    def test_sin_error(self):
        for qec in (circuito_repeticion(3, "ONE"), circuito_repeticion(5, "PLUS"),
                    circuito_cinco_qubits("ZERO"), circuito_steane("ONE")):
            assert qec_score(run(qec.circuito, DISPAROS, seed=1), qec.tablas).score == 1.0

    @pytest.mark.parametrize("n_datos", [3, 5])
    def test_repeticion(self, n_datos):
        for i in range(n_datos):
            qec = circuito_repeticion(n_datos, "ONE", error=("X", i))
            assert qec_score(run(qec.circuito, DISPAROS, seed=i), qec.tablas).score == 1.0

    @pytest.mark.parametrize("inicial", ["ZERO", "ONE"])
    def test_cinco_qubits(self, inicial):
        casos = 0
        for letra in "XYZ":
            for i in range(5):
                qec = circuito_cinco_qubits(inicial, error=(letra, i))
                resultado = qec_score(run(qec.circuito, DISPAROS, seed=i), qec.tablas)
                assert resultado.score == 1.0, (letra, i)
                casos += 1
        assert casos == 15

    @pytest.mark.parametrize("inicial", ["ONE", "PLUS"])
    def test_steane(self, inicial):
        casos = 0
        for letra in "XYZ":
            for i in range(7):
                qec = circuito_steane(inicial, error=(letra, i))
                resultado = qec_score(run(qec.circuito, DISPAROS, seed=i), qec.tablas)
                assert resultado.score == 1.0, (letra, i)
                casos += 1
        assert casos == 21
