"""
Tests de Exportación OpenQASM 3
===============================

Estabilidad exportar→importar→exportar para todas las familias, bloques
condicionales, paridades y textos inválidos.

Para ejecutar las pruebas:
pytest test_exportador_qasm.py -v
"""

import pytest

from circuito_dinamico import build_circuit
from exportador_qasm import MARCADOR, exportar_qasm, importar_qasm
from generadores_benchmarks import generar


TAMANOS = [("GHZ", 5), ("GHZ_RESET", 4), ("LR_CNOT", 6), ("LR_CNOT_SPARSE", 8),
           ("CNOT_LADDER", 7), ("FANOUT", 7), ("QFT_M", 4), ("PARTIAL_QFT_M", 5), ("IPE", 2),
           ("TFIM", 5), ("REP_CODE", 5), ("FIVE_QUBIT_CODE", 11), ("STEANE_CODE", 14)]


@pytest.fixture
def ejemplo_ff():
    b = build_circuit(3, 1)
    b.h(0).h(2).cx(0, 1).cx(2, 1).measure(1, 0)
    with b.si_igual([0], "1") as rama:
        rama.x(2)
    return b.finalizar(system_qubits=[0, 2], nombre="ejemplo_ff")


class TestIdaYVuelta:
    """exportar → importar → exportar"""

    @pytest.mark.parametrize("familia,n", TAMANOS, ids=[f for f, _ in TAMANOS])
    def test_familias(self, familia, n):
        for bench in generar(familia, n):
            texto = exportar_qasm(bench.circuito)
            copia = importar_qasm(texto)
            assert exportar_qasm(copia) == texto
            assert copia.instrucciones == bench.circuito.instrucciones
            assert copia.system_qubits == bench.circuito.system_qubits
            assert copia.registros == bench.circuito.registros

    def test_ejemplo_ff(self, ejemplo_ff):
        texto = exportar_qasm(ejemplo_ff)
        assert texto.count("if (") == 1
        assert "if (c[0] == 1) {" in texto
        assert "c[0] = measure q[1];" in texto
        assert texto.endswith("}\n")
        assert importar_qasm(texto).nombre == "ejemplo_ff"

    def test_paridad(self):
        b = build_circuit(3, 2).h(0).h(1).measure(0, 0).measure(1, 1)
        with b.si_paridad([0, 1]) as rama:
            rama.x(2)
        texto = exportar_qasm(b.finalizar())
        lineas = texto.splitlines()
        i = lineas.index(f"{MARCADOR}parity")
        assert lineas[i + 1] == "if ((c[0] ^ c[1]) == 1) {"
        (_, ins), = importar_qasm(texto).condicionales
        assert ins.condicion.es_paridad

    def test_definicion_rzz(self):
        texto = exportar_qasm(build_circuit(2, 1).rzz(0.3, 0, 1).finalizar())
        assert "gate rzz(theta)" in texto
        assert "rzz(0.3) q[0], q[1];" in texto


class TestErrores:
    """Textos fuera del subconjunto"""

    def test_linea_desconocida(self):
        with pytest.raises(ValueError, match="no soportada"):
            importar_qasm("qubit[1] q;\nbit[1] c;\nwhile (true) {\n")

    def test_sin_declaraciones(self):
        with pytest.raises(ValueError):
            importar_qasm("OPENQASM 3.0;\n")
        with pytest.raises(ValueError, match="antes de qubits"):
            importar_qasm("bit[1] c;\n")

    def test_bloques(self):
        cabecera = "qubit[1] q;\nbit[2] c;\n"
        with pytest.raises(ValueError, match="sin cerrar"):
            importar_qasm(cabecera + "if (c[0] == 1) {\nx q[0];\n")
        with pytest.raises(ValueError, match="anidados"):
            importar_qasm(cabecera + "if (c[0] == 1) {\nif (c[1] == 0) {\n}\n}\n")
        with pytest.raises(ValueError, match="sin bloque"):
            importar_qasm(cabecera + "}\n")
