"""
Generadores de Benchmarks de Circuitos Dinámicos
================================================

Generadores parametrizados para las trece familias de benchmarks:
- GHZ con ancillas y GHZ con reset y reutilización
- CNOT de largo alcance (denso y disperso), escalera de CNOT y fanout,
  todos de profundidad constante
- QFT + medición (dinámica y parcial), estimación iterativa de fase
- Simulación de Trotter del modelo de Ising transversal (TFIM)
- Códigos de repetición, de cinco qubits y de Steane

Cada generador devuelve el circuito, su modelo de probabilidad de ramas y
la referencia ideal que usa el puntaje correspondiente.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from circuito_dinamico import Circuito, build_circuit, circuito_a_dict, circuito_desde_dict
from caracteristicas_dinamicas import ModeloRamas
from codigos_correctores import (
    CircuitoQEC, circuito_cinco_qubits, circuito_repeticion, circuito_steane,
)
from configuracion import FAMILIAS, advertir_rango


FAMILIAS_CLIFFORD = ("LR_CNOT", "LR_CNOT_SPARSE", "CNOT_LADDER", "FANOUT")
FAMILIAS_QEC = ("REP_CODE", "FIVE_QUBIT_CODE", "STEANE_CODE")

# Medianas de error de dos qubits, de MCM y de un qubit para el modelo k·p+m+s
RUIDO_RAMAS_QEC = (1e-3, 5e-3, 1e-4)


@dataclass(frozen=True)
class EspecificacionBenchmark:
    """Familia y parámetros de tamaño de un benchmark."""
    familia: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.familia not in FAMILIAS:
            raise ValueError(f"❌ Familia desconocida: {self.familia}")


@dataclass(frozen=True)
class BenchmarkGenerado:
    """
    Benchmark generado

    Parameters:
    -----------
    especificacion : EspecificacionBenchmark
    circuito : Circuito
    modelo_ramas : ModeloRamas
        Cubre todos los condicionales del circuito
    referencia : dict
        Datos ideales para el puntaje (distribución, descripción Clifford,
        parámetros TFIM o tablas del código)
    """
    especificacion: EspecificacionBenchmark
    circuito: Circuito
    modelo_ramas: ModeloRamas
    referencia: Dict[str, Any]

    def __post_init__(self):
        if not self.circuito.system_qubits:
            raise ValueError("❌ Un benchmark requiere al menos un qubit de sistema")
        if not self.modelo_ramas.cubre(self.circuito):
            raise ValueError("❌ El modelo de ramas no cubre todos los condicionales")

    @property
    def familia(self) -> str:
        return self.especificacion.familia

    @property
    def n_total(self) -> int:
        return self.circuito.num_qubits

    def digesto_referencia(self) -> str:
        texto = json.dumps(self.referencia, sort_keys=True)
        return hashlib.sha256(texto.encode("utf-8")).hexdigest()[:16]

    def a_dict(self) -> dict:
        return {
            "benchmark": {
                "family": self.familia,
                "params": self.especificacion.params,
                "reference": self.referencia,
                "reference_digest": self.digesto_referencia(),
            },
            "branch_model": self.modelo_ramas.a_dict(),
            "circuit": circuito_a_dict(self.circuito),
        }

    @classmethod
    def desde_dict(cls, datos: dict) -> "BenchmarkGenerado":
        try:
            meta = datos["benchmark"]
            return cls(EspecificacionBenchmark(meta["family"], dict(meta.get("params", {}))),
                       circuito_desde_dict(datos["circuit"]),
                       ModeloRamas.desde_dict(datos["branch_model"]),
                       dict(meta["reference"]))
        except KeyError as e:
            raise ValueError(f"❌ Benchmark JSON sin el campo {e}") from e


def _distribucion(probabilidades: Dict[str, float]) -> Dict[str, Any]:
    return {"kind": "distribution", "distribution": probabilidades}


def _clifford(num_datos: int, datos: Sequence[int], operaciones) -> Dict[str, Any]:
    return {"kind": "clifford", "num_data": num_datos, "data_qubits": list(datos),
            "operations": [[nombre, list(qubits)] for nombre, qubits in operaciones]}


def _paridad(b, clbits: Sequence[int], cuerpo: Callable):
    if clbits:
        with b.si_paridad(list(clbits)) as rama:
            cuerpo(rama)


# ============================================================
# GHZ
# ============================================================

def gen_ghz(n_data: int) -> BenchmarkGenerado:
    """
    GHZ de profundidad constante con ancillas de paridad intercaladas

    Datos en posiciones pares; la ancilla 2i+1 mide Z_i Z_{i+1} y cada dato
    j ≥ 1 recibe X según la paridad de los síndromes anteriores.
    """
    if n_data < 2:
        raise ValueError(f"❌ GHZ requiere al menos 2 qubits de datos (recibido {n_data})")
    n_total = 2 * n_data - 1
    advertir_rango("GHZ", n_total)
    datos = [2 * i for i in range(n_data)]
    ancillas = [2 * i + 1 for i in range(n_data - 1)]
    b = build_circuit(n_total, len(ancillas) + n_data)
    for d in datos:
        b.h(d)
    for i, a in enumerate(ancillas):
        b.cx(datos[i], a)
    for i, a in enumerate(ancillas):
        b.cx(datos[i + 1], a)
    for i, a in enumerate(ancillas):
        b.measure(a, i)
    for j in range(1, n_data):
        _paridad(b, range(j), lambda rama, q=datos[j]: rama.x(q))
    salida = tuple(range(len(ancillas), len(ancillas) + n_data))
    for d, cb in zip(datos, salida):
        b.measure(d, cb)
    circuito = b.finalizar(system_qubits=datos, nombre="GHZ", params={"n_data": n_data},
                           registros={"out": salida, "mcm": tuple(range(len(ancillas)))})
    referencia = _distribucion({"0" * n_data: 0.5, "1" * n_data: 0.5})
    return BenchmarkGenerado(EspecificacionBenchmark("GHZ", {"n_data": n_data}), circuito,
                             ModeloRamas.uniforme(), referencia)


def gen_ghz_reset(n_total: int) -> BenchmarkGenerado:
    """
    GHZ sobre n_total qubits reutilizando las ancillas tras MCM + reset

    Con n_total = 2 el circuito es un par de Bell sin resets.
    """
    if n_total < 2:
        raise ValueError(f"❌ GHZ con reset requiere al menos 2 qubits (recibido {n_total})")
    advertir_rango("GHZ_RESET", n_total)
    if n_total == 2:
        b = build_circuit(2, 2)
        b.h(0).cx(0, 1).measure(0, 0).measure(1, 1)
        circuito = b.finalizar(nombre="GHZ_RESET", params={"n_total": 2},
                               registros={"out": (0, 1)})
    else:
        k = (n_total + 1) // 2
        datos = [2 * i for i in range(k)]
        ancillas = [2 * i + 1 for i in range(k - 1)]
        n_mcm = len(ancillas)
        b = build_circuit(n_total, n_mcm + n_total)
        for d in datos:
            b.h(d)
        for i, a in enumerate(ancillas):
            b.cx(datos[i], a)
        for i, a in enumerate(ancillas):
            b.cx(datos[i + 1], a)
        for i, a in enumerate(ancillas):
            b.measure(a, i)
            b.reset(a)
        for j in range(1, k):
            _paridad(b, range(j), lambda rama, q=datos[j]: rama.x(q))
        for i, a in enumerate(ancillas):
            b.cx(datos[i], a)
        if n_total % 2 == 0:
            b.cx(n_total - 2, n_total - 1)
        salida = tuple(range(n_mcm, n_mcm + n_total))
        for q, cb in enumerate(salida):
            b.measure(q, cb)
        circuito = b.finalizar(nombre="GHZ_RESET", params={"n_total": n_total},
                               registros={"out": salida, "mcm": tuple(range(n_mcm))})
    referencia = _distribucion({"0" * n_total: 0.5, "1" * n_total: 0.5})
    return BenchmarkGenerado(EspecificacionBenchmark("GHZ_RESET", {"n_total": n_total}),
                             circuito, ModeloRamas.uniforme(), referencia)


# ============================================================
# CNOT de largo alcance
# ============================================================

def _cerrar_cnot(b, control: int, objetivo: int, pares_clbits: List[int],
                 copias_clbits: List[int], salida: Tuple[int, int]):
    """Correcciones de marco de Pauli y medición final de control y objetivo."""
    _paridad(b, copias_clbits, lambda rama: rama.z(control))
    _paridad(b, pares_clbits, lambda rama: rama.x(objetivo))
    b.measure(control, salida[0])
    b.measure(objetivo, salida[1])


def gen_lr_cnot(n_total: int) -> BenchmarkGenerado:
    """
    CNOT(q0 → q_{n−1}) de profundidad constante usando todos los intermedios

    Los intermedios forman pares (paridad, copia): la copia se entrelaza con
    su paridad, la paridad se fusiona con la copia anterior y se mide en Z;
    las copias se miden en X al final. Si el número de intermedios es impar,
    q1 es una copia directa del control.
    """
    if n_total < 3:
        raise ValueError(f"❌ LR_CNOT requiere al menos 3 qubits (recibido {n_total})")
    advertir_rango("LR_CNOT", n_total)
    control, objetivo = 0, n_total - 1
    m = n_total - 2
    inicio = 1 if m % 2 == 1 else 0
    pares = [1 + inicio + 2 * j for j in range((m - inicio) // 2)]
    copias = ([1] if inicio else []) + [p + 1 for p in pares]
    b = build_circuit(n_total, m + 2)

    if inicio:
        b.cx(control, 1)
    for p in pares:
        b.h(p + 1)
    for p in pares:
        b.cx(p + 1, p)
    for p in pares:
        b.cx(p - 1, p)
    clbit_de = {q: i for i, q in enumerate(pares + copias)}
    for p in pares:
        b.measure(p, clbit_de[p])
    b.cx(copias[-1], objetivo)
    for s in copias:
        b.h(s)
        b.measure(s, clbit_de[s])
    salida = (m, m + 1)
    _cerrar_cnot(b, control, objetivo, [clbit_de[p] for p in pares],
                 [clbit_de[s] for s in copias], salida)
    circuito = b.finalizar(system_qubits=[control, objetivo], nombre="LR_CNOT",
                           params={"n_total": n_total},
                           registros={"out": salida, "mcm": tuple(range(m))})
    referencia = _clifford(2, [control, objetivo], [("CX", (0, 1))])
    return BenchmarkGenerado(EspecificacionBenchmark("LR_CNOT", {"n_total": n_total}),
                             circuito, ModeloRamas.uniforme(), referencia)


def gen_lr_cnot_sparse(n_total: int) -> BenchmarkGenerado:
    """
    CNOT de largo alcance con bloques [paridad, copia, relevo]

    El relevo copia la copia del bloque para alcanzar el siguiente bloque y
    se descomputa al final sin medirse, de modo que solo se miden paridades
    y copias.
    """
    if n_total < 5:
        raise ValueError(f"❌ LR_CNOT_SPARSE requiere al menos 5 qubits (recibido {n_total})")
    advertir_rango("LR_CNOT_SPARSE", n_total)
    control, objetivo = 0, n_total - 1
    m = n_total - 2
    resto = m % 3
    q = 1
    relevo_inicial = None
    if resto == 1:
        relevo_inicial, q = 1, 2
    bloques: List[Tuple[int, int, Optional[int]]] = []
    while q + 2 <= n_total - 2:
        bloques.append((q, q + 1, q + 2))
        q += 3
    if resto == 2:
        bloques.append((q, q + 1, None))

    b = build_circuit(n_total, 2 * len(bloques) + 2)
    if relevo_inicial is not None:
        b.cx(control, relevo_inicial)
    for _, s, _ in bloques:
        b.h(s)
    for p, s, _ in bloques:
        b.cx(s, p)
    for _, s, r in bloques:
        if r is not None:
            b.cx(s, r)
    izquierda = relevo_inicial if relevo_inicial is not None else control
    for p, s, r in bloques:
        b.cx(izquierda, p)
        izquierda = r if r is not None else s
    pares = [p for p, _, _ in bloques]
    copias = [s for _, s, _ in bloques]
    clbit_de = {x: i for i, x in enumerate(pares + copias)}
    for p in pares:
        b.measure(p, clbit_de[p])
    b.cx(izquierda, objetivo)
    if relevo_inicial is not None:
        b.cx(control, relevo_inicial)
    for _, s, r in bloques:
        if r is not None:
            b.cx(s, r)
    for s in copias:
        b.h(s)
        b.measure(s, clbit_de[s])
    n_mcm = len(pares) + len(copias)
    salida = (n_mcm, n_mcm + 1)
    _cerrar_cnot(b, control, objetivo, [clbit_de[p] for p in pares],
                 [clbit_de[s] for s in copias], salida)
    circuito = b.finalizar(system_qubits=[control, objetivo], nombre="LR_CNOT_SPARSE",
                           params={"n_total": n_total},
                           registros={"out": salida, "mcm": tuple(range(n_mcm))})
    referencia = _clifford(2, [control, objetivo], [("CX", (0, 1))])
    return BenchmarkGenerado(EspecificacionBenchmark("LR_CNOT_SPARSE", {"n_total": n_total}),
                             circuito, ModeloRamas.uniforme(), referencia)


# ============================================================
# Escalera de CNOT y fanout
# ============================================================

def _validar_impar(familia: str, n_total: int, minimo: int):
    if n_total < minimo or n_total % 2 == 0:
        raise ValueError(f"❌ {familia} requiere un número impar de qubits ≥ {minimo} "
                         f"(recibido {n_total})")


def _etapa_escalera(b, datos: List[int], ancillas: List[int], clbits: List[int]):
    """
    Escalera CX(d0,d1), CX(d1,d2), … en orden temporal con profundidad constante

    En la base X la escalera equivale a d_j ^= d_{j+1} simultáneo; cada
    ancilla transporta d_{j+1} y se mide en X. La fase resultante se corrige
    con X sobre d_i según la paridad de los resultados anteriores.
    """
    for d in datos:
        b.h(d)
    for j, a in enumerate(ancillas):
        b.cx(datos[j + 1], a)
    for j, a in enumerate(ancillas):
        b.cx(a, datos[j])
    for d in datos:
        b.h(d)
    for j, a in enumerate(ancillas):
        b.h(a)
        b.measure(a, clbits[j])
    for i in range(1, len(datos)):
        _paridad(b, clbits[:i], lambda rama, q=datos[i]: rama.x(q))


def gen_cnot_ladder(n_total: int) -> BenchmarkGenerado:
    """Escalera de CNOT sobre k+1 datos con k ancillas intercaladas (n = 2k+1)."""
    _validar_impar("CNOT_LADDER", n_total, 3)
    advertir_rango("CNOT_LADDER", n_total)
    k = (n_total - 1) // 2
    datos = [2 * j for j in range(k + 1)]
    ancillas = [2 * j + 1 for j in range(k)]
    b = build_circuit(n_total, k + k + 1)
    _etapa_escalera(b, datos, ancillas, list(range(k)))
    salida = tuple(range(k, 2 * k + 1))
    for d, cb in zip(datos, salida):
        b.measure(d, cb)
    circuito = b.finalizar(system_qubits=datos, nombre="CNOT_LADDER",
                           params={"n_total": n_total},
                           registros={"out": salida, "mcm": tuple(range(k))})
    referencia = _clifford(k + 1, datos, [("CX", (j, j + 1)) for j in range(k)])
    return BenchmarkGenerado(EspecificacionBenchmark("CNOT_LADDER", {"n_total": n_total}),
                             circuito, ModeloRamas.uniforme(), referencia)


def gen_fanout(n_total: int) -> BenchmarkGenerado:
    """
    Fanout CX(d0, d_j) para todo j ≥ 1, con profundidad constante

    Primero d_j ^= d_{j−1} (j ≥ 2) con ancillas que se miden y se reinician;
    luego la escalera convierte esas diferencias en d_j ^= d_0.
    """
    _validar_impar("FANOUT", n_total, 5)
    advertir_rango("FANOUT", n_total)
    k = (n_total - 1) // 2
    datos = [2 * j for j in range(k + 1)]
    ancillas = [2 * j + 1 for j in range(k)]
    n_a = k - 1
    b = build_circuit(n_total, n_a + k + k + 1)

    for j in range(2, k + 1):
        b.cx(datos[j - 1], ancillas[j - 1])
    for j in range(2, k + 1):
        b.cx(ancillas[j - 1], datos[j])
    clbits_a = {l: l - 1 for l in range(1, k)}
    for l in range(1, k):
        b.h(ancillas[l])
        b.measure(ancillas[l], clbits_a[l])
        b.reset(ancillas[l])
    for l in range(1, k):
        _paridad(b, [clbits_a[x] for x in range(l, k)], lambda rama, q=datos[l]: rama.z(q))

    _etapa_escalera(b, datos, ancillas, list(range(n_a, n_a + k)))
    salida = tuple(range(n_a + k, n_a + 2 * k + 1))
    for d, cb in zip(datos, salida):
        b.measure(d, cb)
    circuito = b.finalizar(system_qubits=datos, nombre="FANOUT", params={"n_total": n_total},
                           registros={"out": salida, "mcm": tuple(range(n_a + k))})
    referencia = _clifford(k + 1, datos, [("CX", (0, j)) for j in range(1, k + 1)])
    return BenchmarkGenerado(EspecificacionBenchmark("FANOUT", {"n_total": n_total}),
                             circuito, ModeloRamas.uniforme(), referencia)


# ============================================================
# QFT + medición
# ============================================================

def _validar_cadena(s: str, n: int):
    if len(s) != n or set(s) - {"0", "1"}:
        raise ValueError(f"❌ Cadena de entrada inválida para n={n}: '{s}'")


def _codificar_fourier(b, n: int, s: str):
    """Preparar QFT|s⟩: el qubit q lleva la fase 2π·S/2^{q+1} (s[0] es el MSB)."""
    valor = int(s, 2)
    for q in range(n):
        b.h(q)
        angulo = 2 * math.pi * valor / 2 ** (q + 1)
        if not math.isclose(math.remainder(angulo, 2 * math.pi), 0.0, abs_tol=1e-15):
            b.p(angulo, q)


def gen_qft_m(n: int, s: str) -> BenchmarkGenerado:
    """
    QFT inversa semiclásica: cada rotación controlada se reemplaza por una
    fase condicionada al bit ya medido

    El qubit q se mide en el clbit n−1−q, de modo que el registro reproduce s.
    """
    if n < 2:
        raise ValueError(f"❌ QFT_M requiere al menos 2 qubits (recibido {n})")
    _validar_cadena(s, n)
    advertir_rango("QFT_M", n)
    b = build_circuit(n, n)
    _codificar_fourier(b, n, s)
    for q in range(n):
        for p in range(q):
            with b.si_igual([n - 1 - p], "1") as rama:
                rama.p(-2 * math.pi / 2 ** (q - p + 1), q)
        b.h(q)
        b.measure(q, n - 1 - q)
    circuito = b.finalizar(nombre="QFT_M", params={"n": n, "s": s},
                           registros={"out": tuple(range(n))})
    return BenchmarkGenerado(EspecificacionBenchmark("QFT_M", {"n": n, "s": s}), circuito,
                             ModeloRamas.uniforme(), {**_distribucion({s: 1.0}), "s": s})


def gen_partial_qft_m(n: int, s: str) -> BenchmarkGenerado:
    """
    QFT inversa con los primeros ⌈n/2⌉ qubits dinámicos y el resto unitario

    Los qubits unitarios reciben fases condicionadas de la mitad dinámica y
    fases controladas cuánticamente de los qubits unitarios anteriores; se
    miden al final.
    """
    if n < 2:
        raise ValueError(f"❌ PARTIAL_QFT_M requiere al menos 2 qubits (recibido {n})")
    _validar_cadena(s, n)
    advertir_rango("PARTIAL_QFT_M", n)
    h = (n + 1) // 2
    b = build_circuit(n, n)
    _codificar_fourier(b, n, s)
    for q in range(h):
        for p in range(q):
            with b.si_igual([n - 1 - p], "1") as rama:
                rama.p(-2 * math.pi / 2 ** (q - p + 1), q)
        b.h(q)
        b.measure(q, n - 1 - q)
    for q in range(h, n):
        for p in range(h):
            with b.si_igual([n - 1 - p], "1") as rama:
                rama.p(-2 * math.pi / 2 ** (q - p + 1), q)
        for p in range(h, q):
            b.cp(-2 * math.pi / 2 ** (q - p + 1), p, q)
        b.h(q)
    for q in range(h, n):
        b.measure(q, n - 1 - q)
    circuito = b.finalizar(nombre="PARTIAL_QFT_M", params={"n": n, "s": s},
                           registros={"out": tuple(range(n))})
    return BenchmarkGenerado(EspecificacionBenchmark("PARTIAL_QFT_M", {"n": n, "s": s}),
                             circuito, ModeloRamas.uniforme(), {**_distribucion({s: 1.0}), "s": s})


def cadenas_qft(n: int, seed: int, cantidad: int = 3) -> List[str]:
    """Cadenas de entrada aleatorias (reproducibles) para el protocolo QFT."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), n]))
    return ["".join(str(int(x)) for x in rng.integers(0, 2, size=n)) for _ in range(cantidad)]


# ============================================================
# Estimación iterativa de fase
# ============================================================

def bits_fase(theta: float, m_bits: int) -> str:
    """Expansión binaria de θ con m bits (redondeo al más cercano, módulo 2^m)."""
    return format(int(round(theta * 2 ** m_bits)) % 2 ** m_bits, f"0{m_bits}b")


def gen_ipe(theta: float, m_bits: int) -> BenchmarkGenerado:
    """
    Estimación iterativa de fase con 2 qubits

    q0 es la ancilla reutilizada y q1 el autoestado |1⟩ de la fase
    controlada. La ronda k extrae el bit m−k de θ (el menos significativo
    primero) y corrige con RZ los bits ya medidos.
    """
    if not 0.0 <= theta < 1.0:
        raise ValueError(f"❌ θ debe estar en [0, 1) (recibido {theta})")
    if m_bits < 1:
        raise ValueError(f"❌ m_bits debe ser al menos 1 (recibido {m_bits})")
    referencia_bits = bits_fase(theta, m_bits)
    if not math.isclose(theta * 2 ** m_bits, round(theta * 2 ** m_bits), abs_tol=1e-12):
        warnings.warn(f"⚠️ θ={theta} no es representable con {m_bits} bits; "
                      f"la referencia usa '{referencia_bits}' y el puntaje ideal será < 1")
    b = build_circuit(2, m_bits)
    b.x(1)
    for k in range(1, m_bits + 1):
        if k > 1:
            b.reset(0)
        b.h(0)
        b.cp(2 * math.pi * theta * 2 ** (m_bits - k), 0, 1)
        for r in range(1, k):
            with b.si_igual([m_bits - r], "1") as rama:
                rama.rz(-2 * math.pi / 2 ** (k - r + 1), 0)
        b.h(0)
        b.measure(0, m_bits - k)
    circuito = b.finalizar(system_qubits=[1], nombre="IPE",
                           params={"theta": theta, "m_bits": m_bits},
                           registros={"out": tuple(range(m_bits))})
    referencia = {**_distribucion({referencia_bits: 1.0}), "theta": theta, "m_bits": m_bits}
    return BenchmarkGenerado(EspecificacionBenchmark("IPE", {"theta": theta, "m_bits": m_bits}),
                             circuito, ModeloRamas.uniforme(), referencia)


# ============================================================
# TFIM
# ============================================================

def gen_tfim(n_data: int, steps: int, J: float = 1.0, h: float = 1.0,
             dt: float = 0.1) -> BenchmarkGenerado:
    """
    Trotterización del modelo de Ising transversal con R_ZZ dinámicas

    Cada paso aplica R_X(2·h·dt) sobre los datos y luego R_ZZ(2·J·dt) en los
    enlaces pares y después en los impares; cada R_ZZ se realiza con la
    ancilla intercalada: paridad, R_Z, medición en X, corrección Z⊗Z y reset.
    """
    if n_data < 2:
        raise ValueError(f"❌ TFIM requiere al menos 2 qubits de datos (recibido {n_data})")
    if steps < 0:
        raise ValueError(f"❌ steps no puede ser negativo (recibido {steps})")
    n_total = 2 * n_data - 1
    advertir_rango("TFIM", n_total)
    datos = [2 * i for i in range(n_data)]
    enlaces = list(range(0, n_data - 1, 2)) + list(range(1, n_data - 1, 2))
    n_mcm = steps * (n_data - 1)
    b = build_circuit(n_total, n_mcm + n_data)
    clbit = 0
    for _ in range(steps):
        for d in datos:
            b.rx(2 * h * dt, d)
        for i in enlaces:
            a = 2 * i + 1
            b.cx(datos[i], a)
            b.cx(datos[i + 1], a)
            b.rz(2 * J * dt, a)
            b.h(a)
            b.measure(a, clbit)
            with b.si_igual([clbit], "1") as rama:
                rama.z(datos[i])
                rama.z(datos[i + 1])
            b.reset(a)
            clbit += 1
    salida = tuple(range(n_mcm, n_mcm + n_data))
    for d, cb in zip(datos, salida):
        b.measure(d, cb)
    params = {"n_data": n_data, "steps": steps, "J": J, "h": h, "dt": dt}
    circuito = b.finalizar(system_qubits=datos, nombre="TFIM", params=params,
                           registros={"out": salida, "mcm": tuple(range(n_mcm))})
    return BenchmarkGenerado(EspecificacionBenchmark("TFIM", params), circuito,
                             ModeloRamas.uniforme(), {"kind": "tfim", **params})


# ============================================================
# Corrección de errores
# ============================================================

def _benchmark_qec(familia: str, qec: CircuitoQEC, params: Dict[str, Any],
                   ruido_ramas: Tuple[float, float, float],
                   probabilidad_rama: Optional[float] = None) -> BenchmarkGenerado:
    if probabilidad_rama is not None:
        modelo = ModeloRamas.explicito({ins.condicion: probabilidad_rama
                                        for _, ins in qec.circuito.condicionales})
    else:
        p, m, s = ruido_ramas
        modelo = ModeloRamas.ruido_qec(p, m, s, qec.pesos)
    return BenchmarkGenerado(EspecificacionBenchmark(familia, params), qec.circuito, modelo,
                             {"kind": "qec", "tables": qec.tablas.a_dict()})


def gen_rep_code(n_data: int, initial: str = "ONE", error: Optional[Tuple[str, int]] = None,
                 ruido_ramas: Tuple[float, float, float] = RUIDO_RAMAS_QEC) -> BenchmarkGenerado:
    """Código de repetición de distancia 3 o 5 (5 o 9 qubits totales)."""
    qec = circuito_repeticion(n_data, initial, error)
    advertir_rango("REP_CODE", qec.circuito.num_qubits)
    return _benchmark_qec("REP_CODE", qec, {"n_data": n_data, "initial": initial}, ruido_ramas)


def gen_five_qubit_code(initial: str = "ZERO", error: Optional[Tuple[str, int]] = None,
                        ruido_ramas: Tuple[float, float, float] = RUIDO_RAMAS_QEC,
                        probabilidad_rama: Optional[float] = None) -> BenchmarkGenerado:
    """
    Código [[5,1,3]] con 11 qubits totales

    `probabilidad_rama` fija la misma probabilidad explícita (p. ej. 1/16)
    para los 15 condicionales en lugar del modelo k·p+m+s.
    """
    qec = circuito_cinco_qubits(initial, error)
    return _benchmark_qec("FIVE_QUBIT_CODE", qec, {"initial": initial}, ruido_ramas,
                          probabilidad_rama)


def gen_steane_code(initial: str = "ONE", error: Optional[Tuple[str, int]] = None,
                    ruido_ramas: Tuple[float, float, float] = RUIDO_RAMAS_QEC) -> BenchmarkGenerado:
    """Código de Steane con 14 qubits totales."""
    qec = circuito_steane(initial, error)
    return _benchmark_qec("STEANE_CODE", qec, {"initial": initial}, ruido_ramas)


# ============================================================
# Registro por familia
# ============================================================

def _mitad_mas_uno(familia: str, n_total: int) -> int:
    if n_total % 2 == 0:
        raise ValueError(f"❌ {familia} requiere un número impar de qubits totales "
                         f"(recibido {n_total})")
    return (n_total + 1) // 2


def generar(familia: str, n_total: int, params: Optional[Dict[str, Any]] = None,
            seed: int = 0) -> List[BenchmarkGenerado]:
    """
    Generar los circuitos de una familia para un número total de qubits

    Parameters:
    -----------
    familia : str
        Nombre de la familia
    n_total : int
        Qubits totales (sistema + ancillas)
    params : dict, opcional
        Parámetros extra (s, theta, m_bits, steps, J, h, dt, initial)
    seed : int
        Semilla para las cadenas aleatorias de QFT

    Returns:
    --------
    list de BenchmarkGenerado
        Un elemento, salvo QFT que devuelve una variante por cadena de entrada
    """
    params = dict(params or {})
    if familia not in GENERADORES:
        raise ValueError(f"❌ Familia desconocida: {familia}")
    if familia in ("QFT_M", "PARTIAL_QFT_M"):
        cadenas = [params["s"]] if "s" in params else cadenas_qft(n_total, seed)
        return [GENERADORES[familia](n_total, s) for s in cadenas]
    if familia == "IPE":
        if n_total != 2:
            raise ValueError(f"❌ IPE usa exactamente 2 qubits (recibido {n_total})")
        return [gen_ipe(float(params.get("theta", 0.625)), int(params.get("m_bits", 3)))]
    if familia == "GHZ":
        return [gen_ghz(_mitad_mas_uno(familia, n_total))]
    if familia == "TFIM":
        return [gen_tfim(_mitad_mas_uno(familia, n_total), int(params.get("steps", 2)),
                         float(params.get("J", 1.0)), float(params.get("h", 1.0)),
                         float(params.get("dt", 0.1)))]
    if familia == "REP_CODE":
        return [gen_rep_code(_mitad_mas_uno(familia, n_total), params.get("initial", "ONE"))]
    if familia in ("FIVE_QUBIT_CODE", "STEANE_CODE"):
        esperado = 11 if familia == "FIVE_QUBIT_CODE" else 14
        if n_total != esperado:
            raise ValueError(f"❌ {familia} usa exactamente {esperado} qubits (recibido {n_total})")
        inicial = params.get("initial", "ZERO" if familia == "FIVE_QUBIT_CODE" else "ONE")
        return [GENERADORES[familia](inicial)]
    return [GENERADORES[familia](n_total)]


GENERADORES: Dict[str, Callable[..., BenchmarkGenerado]] = {
    "GHZ": gen_ghz, "GHZ_RESET": gen_ghz_reset,
    "LR_CNOT": gen_lr_cnot, "LR_CNOT_SPARSE": gen_lr_cnot_sparse,
    "CNOT_LADDER": gen_cnot_ladder, "FANOUT": gen_fanout,
    "QFT_M": gen_qft_m, "PARTIAL_QFT_M": gen_partial_qft_m,
    "IPE": gen_ipe, "TFIM": gen_tfim,
    "REP_CODE": gen_rep_code, "FIVE_QUBIT_CODE": gen_five_qubit_code,
    "STEANE_CODE": gen_steane_code,
}
