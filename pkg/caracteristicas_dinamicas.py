"""
Características de Circuitos Dinámicos
======================================

Cálculo de las 24 características de un circuito dinámico con semántica de
valor esperado sobre las ramas de feed-forward:
- Modelos de probabilidad de ramas (uniforme, ruido QEC k·p+m+s, explícito)
- Profundidad y número de operaciones esperados
- Entrelazamiento cuántico y clásico, razón de qubits de sistema
- Camino crítico de dos qubits, profundidad dinámica, paralelismo
- Comunicación (matriz de interacción), liveness
- Entropía de Rényi-2 normalizada de los resultados de MCM

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Tuple, Mapping, Optional
import math
import warnings

import numpy as np
import networkx as nx

from circuito_dinamico import (
    Circuito, Condicion, Instruccion, layer_schedule, strip_final_measurements,
    classify_qubits,
)


NOMBRES_CARACTERISTICAS: List[str] = [
    "f00_depth_noff", "f01_depth_ff",
    "f02_ops_unitary", "f03_ops_quantum", "f04_ops_all",
    "f05_n_system", "f06_n_total",
    "f07_liveness_noff", "f08_liveness_ff",
    "f09_system_ratio",
    "f10_critical_q", "f11_critical_qc",
    "f12_dyn_depth_noff", "f13_dyn_depth_ff",
    "f14_parallel_noff", "f15_parallel_ff",
    "f16_comm_q", "f17_comm_qc",
    "f18_q_ent_unitary", "f19_q_ent_quantum", "f20_q_ent_all",
    "f21_qc_ent_unitary", "f22_qc_ent_quantum", "f23_qc_ent_all",
]

VARIANTES_OPS = ("UNITARY", "QUANTUM", "ALL")


@dataclass(frozen=True)
class ModeloRamas:
    """
    Modelo de probabilidad de las ramas condicionales

    Parameters:
    -----------
    tipo : str
        "uniform", "qec" o "explicit"
    p, m, s : float
        Error de dos qubits, de MCM y de un qubit (solo "qec")
    pesos : dict
        clbit de síndrome -> peso k del estabilizador que lo mide (solo "qec")
    explicitas : dict
        Condicion -> probabilidad (solo "explicit")
    """
    tipo: str = "uniform"
    p: float = 0.0
    m: float = 0.0
    s: float = 0.0
    pesos: Dict[int, int] = field(default_factory=dict)
    explicitas: Dict[Condicion, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.tipo not in ("uniform", "qec", "explicit"):
            raise ValueError(f"❌ Tipo de modelo de ramas desconocido: {self.tipo}")
        for prob in self.explicitas.values():
            if not 0.0 <= prob <= 1.0:
                raise ValueError(f"❌ Probabilidad fuera de [0,1]: {prob}")

    @classmethod
    def uniforme(cls) -> "ModeloRamas":
        return cls("uniform")

    @classmethod
    def ruido_qec(cls, p: float, m: float, s: float, pesos: Mapping[int, int]) -> "ModeloRamas":
        return cls("qec", p=p, m=m, s=s, pesos=dict(pesos))

    @classmethod
    def explicito(cls, probabilidades: Mapping[Condicion, float]) -> "ModeloRamas":
        return cls("explicit", explicitas=dict(probabilidades))

    def cubre(self, c: Circuito) -> bool:
        try:
            for _, ins in c.condicionales:
                branch_probability(ins.condicion, self)
        except ValueError:
            return False
        return True

    def a_dict(self) -> dict:
        datos = {"kind": self.tipo}
        if self.tipo == "qec":
            datos.update(p=self.p, m=self.m, s=self.s,
                         weights={str(k): v for k, v in sorted(self.pesos.items())})
        elif self.tipo == "explicit":
            datos["probabilities"] = [
                {"bits": list(c.clbits), "pred": c.predicado, "val": c.valor, "p": prob}
                for c, prob in self.explicitas.items()]
        return datos

    @classmethod
    def desde_dict(cls, datos: dict) -> "ModeloRamas":
        tipo = datos.get("kind", "uniform")
        if tipo == "qec":
            return cls.ruido_qec(datos["p"], datos["m"], datos["s"],
                                 {int(k): int(v) for k, v in datos["weights"].items()})
        if tipo == "explicit":
            return cls.explicito({
                Condicion(tuple(e["bits"]), e["pred"], str(e["val"])): float(e["p"])
                for e in datos["probabilities"]})
        return cls(tipo)


@dataclass(frozen=True)
class VectorCaracteristicas:
    """Las 24 características en el orden fijo de NOMBRES_CARACTERISTICAS."""
    valores: Tuple[float, ...]

    def __post_init__(self):
        if len(self.valores) != len(NOMBRES_CARACTERISTICAS):
            raise ValueError("❌ Un vector de características debe tener 24 entradas")

    def __getitem__(self, indice: int) -> float:
        return self.valores[indice]

    def como_dict(self) -> Dict[str, float]:
        return dict(zip(NOMBRES_CARACTERISTICAS, self.valores))

    def como_array(self) -> np.ndarray:
        return np.array(self.valores, dtype=float)


@dataclass(frozen=True)
class MatrizComunicacion:
    """Matriz simétrica A de probabilidades de interacción entre qubits."""
    A: np.ndarray

    @property
    def grados(self) -> np.ndarray:
        return self.A.sum(axis=1)


# ============================================================
# Probabilidades de rama
# ============================================================

def branch_probability(cond: Condicion, bm: ModeloRamas) -> float:
    """
    Probabilidad de que se ejecute la rama gobernada por `cond`

    Uniforme: 1/2 para paridad, 1/2^v para igualdad sobre v bits.
    Ruido QEC: k·p + m + s, con k el peso del estabilizador que gobierna la
    condición (el mayor peso entre los bits de síndrome en 1).
    Explícito: valor almacenado.
    """
    if bm.tipo == "uniform":
        if cond.es_paridad:
            return 0.5
        return 1.0 / (2 ** len(cond.clbits))
    if bm.tipo == "qec":
        faltantes = [c for c in cond.clbits if c not in bm.pesos]
        if faltantes:
            raise ValueError(f"❌ Condición sin peso de estabilizador para clbits {faltantes}")
        activos = [c for c, v in zip(cond.clbits, cond.valor) if v == "1"] or list(cond.clbits)
        if cond.es_paridad:
            activos = list(cond.clbits)
        k = max(bm.pesos[c] for c in activos)
        return min(1.0, k * bm.p + bm.m + bm.s)
    if cond not in bm.explicitas:
        raise ValueError(f"❌ Condición no cubierta por el modelo explícito: {cond}")
    return bm.explicitas[cond]


def _probabilidades(c: Circuito, bm: ModeloRamas) -> List[Tuple[Instruccion, float]]:
    return [(ins, branch_probability(ins.condicion, bm)) for _, ins in c.condicionales]


def _conteo(instrs, criterio) -> int:
    return sum(1 for ins in instrs if criterio(ins))


def _es_2q(ins: Instruccion) -> bool:
    return ins.es_dos_qubits


def _es_op_cuantica(ins: Instruccion) -> bool:
    return ins.es_compuerta or ins.es_medicion or ins.es_reset


# ============================================================
# Profundidad y operaciones
# ============================================================

def expected_depth(c: Circuito, bm: ModeloRamas, include_ff: bool) -> float:
    """D_base + (1 por condicional si include_ff) + Σ p_i·D_i."""
    plan = layer_schedule(c, include_ff)
    esperada = sum(branch_probability(ins.condicion, bm) * plan.branch_depths[i]
                   for i, ins in c.condicionales)
    return plan.l_total(esperada)


def expected_ops(c: Circuito, bm: ModeloRamas, variant: str) -> float:
    """
    Número esperado de operaciones

    UNITARY cuenta compuertas; QUANTUM agrega mediciones y resets; ALL
    agrega una operación de feed-forward por condicional.
    """
    variant = variant.upper()
    if variant not in VARIANTES_OPS:
        raise ValueError(f"❌ Variante desconocida: {variant}")
    criterio = (lambda i: i.es_compuerta) if variant == "UNITARY" else _es_op_cuantica
    base = [i for i in c.instrucciones if not i.es_condicional]
    total = float(_conteo(base, criterio))
    for ins, p in _probabilidades(c, bm):
        total += p * _conteo(ins.cuerpo, criterio)
    if variant == "ALL":
        total += len(c.condicionales)
    return total


def expected_two_qubit_gates(c: Circuito, bm: ModeloRamas) -> float:
    """Compuertas de dos qubits esperadas (base + ramas ponderadas)."""
    base = [i for i in c.instrucciones if not i.es_condicional]
    total = float(_conteo(base, _es_2q))
    for ins, p in _probabilidades(c, bm):
        total += p * _conteo(ins.cuerpo, _es_2q)
    return total


def enumerate_branches(c: Circuito, bm: ModeloRamas) -> List[Tuple[float, Tuple[bool, ...]]]:
    """
    Enumerar todas las realizaciones tomada/no tomada de los condicionales

    Returns:
    --------
    List[Tuple[float, Tuple[bool, ...]]]
        (probabilidad, patrón de ramas tomadas) con probabilidades independientes
    """
    probs = [p for _, p in _probabilidades(c, bm)]
    realizaciones = []
    for patron in product((False, True), repeat=len(probs)):
        peso = 1.0
        for tomada, p in zip(patron, probs):
            peso *= p if tomada else 1.0 - p
        realizaciones.append((peso, patron))
    return realizaciones


def entanglement_features(c: Circuito, bm: ModeloRamas) -> Tuple[float, ...]:
    """
    Entrelazamiento cuántico E_Q y cuántico+clásico E_QC

    Returns:
    --------
    tuple de 6 float
        (E_Q, E_Q, E_Q, E_QC, E_QC, E_QC) sobre los denominadores
        UNITARY, QUANTUM y ALL respectivamente
    """
    base = [i for i in c.instrucciones if not i.es_condicional]
    g2q_base = _conteo(base, _es_2q)
    g_ramas = sum(p * _conteo(ins.cuerpo, lambda i: i.es_compuerta)
                  for ins, p in _probabilidades(c, bm))
    totales = [expected_ops(c, bm, v) for v in VARIANTES_OPS]
    if any(t == 0 for t in totales):
        raise ValueError("❌ O_total = 0: el circuito no tiene operaciones")
    e_q = [g2q_base / t for t in totales]
    e_qc = [min(1.0, (g2q_base + g_ramas) / t) for t in totales]
    return tuple(e_q + e_qc)


def system_qubit_ratio(c: Circuito) -> float:
    return len(c.system_qubits) / c.num_qubits


# ============================================================
# Camino crítico
# ============================================================

def _camino_critico(G: nx.DiGraph) -> Tuple[int, int]:
    """Longitud máxima y, entre los más largos, máximo de compuertas 2q."""
    mejor: Dict[object, Tuple[int, int]] = {}
    for nodo in nx.topological_sort(G):
        previo = max((mejor[p] for p in G.predecessors(nodo)), default=(0, 0))
        mejor[nodo] = (previo[0] + 1, previo[1] + G.nodes[nodo]["dos_q"])
    return max(mejor.values(), default=(0, 0))


def _dag_lista(instrs) -> nx.DiGraph:
    G = nx.DiGraph()
    ultimo: Dict[int, object] = {}
    for i, ins in enumerate(instrs):
        G.add_node(i, dos_q=int(_es_2q(ins)))
        for q in ins.qubits:
            if q in ultimo:
                G.add_edge(ultimo[q], i)
            ultimo[q] = i
    return G


def _dag_base(c: Circuito, con_ff: bool) -> nx.DiGraph:
    """
    DAG de dependencias del circuito base

    Con `con_ff`, cada condicional agrega un nodo de feed-forward que depende
    de las mediciones de sus bits y de los qubits de su cuerpo, y del que
    dependen las instrucciones base posteriores sobre esos qubits.
    """
    G = nx.DiGraph()
    ultimo: Dict[int, object] = {}
    escritor: Dict[int, object] = {}
    for i, ins in enumerate(c.instrucciones):
        if ins.es_condicional:
            if not con_ff:
                continue
            nodo = ("ff", i)
            G.add_node(nodo, dos_q=0)
            for cb in ins.condicion.clbits:
                if cb in escritor:
                    G.add_edge(escritor[cb], nodo)
            for q in ins.qubits_tocados:
                if q in ultimo:
                    G.add_edge(ultimo[q], nodo)
                ultimo[q] = nodo
            continue
        G.add_node(i, dos_q=int(_es_2q(ins)))
        for q in ins.qubits:
            if q in ultimo:
                G.add_edge(ultimo[q], i)
            ultimo[q] = i
        if ins.es_medicion:
            escritor[ins.clbit] = i
    return G


def critical_two_qubit(c: Circuito, bm: ModeloRamas, include_ff_ordering: bool) -> float:
    """
    Fracción esperada de compuertas de dos qubits sobre el camino crítico

    (N_crit^base + Σ p_i N_crit^(i)) / (N_tot^base + Σ p_i N_tot^(i)); con
    `include_ff_ordering` el camino crítico base incluye los nodos de
    feed-forward. Sin compuertas de dos qubits el valor es 0.
    """
    _, n_crit = _camino_critico(_dag_base(c, include_ff_ordering))
    n_tot = float(_conteo([i for i in c.instrucciones if not i.es_condicional], _es_2q))
    n_crit = float(n_crit)
    for ins, p in _probabilidades(c, bm):
        n_crit += p * _camino_critico(_dag_lista(ins.cuerpo))[1]
        n_tot += p * _conteo(ins.cuerpo, _es_2q)
    if n_tot == 0:
        return 0.0
    return n_crit / n_tot


# ============================================================
# Profundidad dinámica, comunicación, liveness, paralelismo
# ============================================================

def dynamic_depth_ratio(c: Circuito, bm: ModeloRamas, include_ff: bool) -> float:
    """(l_mcm + [ff]·l_ff) / l_total con el mismo indicador de feed-forward."""
    plan = layer_schedule(c, include_ff)
    l_total = expected_depth(c, bm, include_ff)
    if l_total == 0:
        raise ValueError("❌ l_total = 0: circuito vacío")
    return (plan.mcm_layer_count + plan.ff_layer_count) / l_total


def _qubits_medidos_antes(c: Circuito, indice: int) -> Dict[int, int]:
    """clbit -> qubit de la última medición base que lo escribe antes de `indice`."""
    escritor: Dict[int, int] = {}
    for ins in c.instrucciones[:indice]:
        if ins.es_medicion:
            escritor[ins.clbit] = ins.qubits[0]
    return escritor


def communication(c: Circuito, bm: ModeloRamas, include_classical: bool
                  ) -> Tuple[float, MatrizComunicacion]:
    """
    Característica de comunicación y matriz de interacción

    Las compuertas base de dos qubits aportan probabilidad 1. Con
    `include_classical`, cada compuerta de rama une sus operandos con los
    qubits de MCM que gobiernan la condición (y entre sí si es de dos
    qubits) con la probabilidad de la rama. Contribuciones repetidas se
    combinan como 1 − Π(1 − p).
    """
    n = c.num_qubits
    if n < 2:
        raise ValueError("❌ La comunicación requiere al menos 2 qubits")
    no_interaccion = np.ones((n, n))

    def unir(a: int, b: int, p: float):
        if a != b:
            no_interaccion[a, b] *= 1.0 - p
            no_interaccion[b, a] *= 1.0 - p

    for indice, ins in enumerate(c.instrucciones):
        if ins.es_dos_qubits:
            unir(ins.qubits[0], ins.qubits[1], 1.0)
        elif ins.es_condicional and include_classical:
            p = branch_probability(ins.condicion, bm)
            escritor = _qubits_medidos_antes(c, indice)
            mcm = sorted({escritor[cb] for cb in ins.condicion.clbits if cb in escritor})
            for sub in ins.cuerpo:
                if not sub.es_compuerta:
                    continue
                for q in sub.qubits:
                    for m in mcm:
                        unir(q, m, p)
                if sub.es_dos_qubits:
                    unir(sub.qubits[0], sub.qubits[1], p)

    A = 1.0 - no_interaccion
    np.fill_diagonal(A, 0.0)
    matriz = MatrizComunicacion(A)
    return float(matriz.grados.sum() / (n * (n - 1))), matriz


def _tiempo_vivo(instrs) -> float:
    return float(sum(2 if _es_2q(i) else 1 for i in instrs
                     if i.es_compuerta or i.es_reset or i.es_medicion))


def _recortar_unidad(valor: float, nombre: str) -> float:
    if valor < -1e-12 or valor > 1.0 + 1e-12:
        warnings.warn(f"⚠️ {nombre} = {valor:.6g} fuera de [0, 1]; se recorta")
    return float(np.clip(valor, 0.0, 1.0))


def liveness(c: Circuito, bm: ModeloRamas, include_ff: bool) -> float:
    """
    Razón entre tiempo vivo y tiempo de ejecución de los qubits

    Se eliminan primero las mediciones finales. Cada compuerta de un qubit,
    reset o MCM aporta 1 paso de tiempo vivo; cada compuerta de dos qubits
    aporta 2. T_exec = Σ_{n1} D_pre + n2·D_total.
    """
    c = strip_final_measurements(c)
    vivo = _tiempo_vivo([i for i in c.instrucciones if not i.es_condicional])
    for ins, p in _probabilidades(c, bm):
        vivo += p * _tiempo_vivo(ins.cuerpo)
    _, n2, pre = classify_qubits(c)
    t_exec = sum(pre) + n2 * expected_depth(c, bm, include_ff)
    if t_exec == 0:
        raise ValueError("❌ T_exec = 0: liveness indefinida")
    return _recortar_unidad(vivo / t_exec, "liveness")


def parallelism(c: Circuito, bm: ModeloRamas, include_ff: bool) -> float:
    """((O_total/D_total) − 1)/(n − 1), QUANTUM con sin-FF y ALL con FF."""
    n = c.num_qubits
    if n < 2:
        raise ValueError("❌ El paralelismo requiere al menos 2 qubits")
    d_total = expected_depth(c, bm, include_ff)
    if d_total == 0:
        raise ValueError("❌ D_total = 0: paralelismo indefinido")
    o_total = expected_ops(c, bm, "ALL" if include_ff else "QUANTUM")
    return _recortar_unidad((o_total / d_total - 1.0) / (n - 1), "parallelism")


# ============================================================
# Entropía de Rényi-2
# ============================================================

def renyi2_normalized(conteos: Mapping[str, float], n_a: int) -> float:
    """
    Entropía de Rényi-2 normalizada de una distribución de resultados

    Parameters:
    -----------
    conteos : dict
        Cadena de bits -> conteo o probabilidad
    n_a : int
        Número de bits de condición

    Returns:
    --------
    float
        −log2(Σ p²)/n_a recortado a [0, 1]
    """
    if n_a < 1:
        raise ValueError("❌ n_a debe ser al menos 1")
    valores = np.array([v for v in conteos.values()], dtype=float)
    if valores.size == 0 or valores.sum() <= 0:
        raise ValueError("❌ Distribución vacía")
    p = valores / valores.sum()
    h2 = -math.log2(float(np.sum(p ** 2)))
    return float(np.clip(h2 / n_a, 0.0, 1.0))


# ============================================================
# Agregador
# ============================================================

def feature_vector(c: Circuito, bm: Optional[ModeloRamas] = None) -> VectorCaracteristicas:
    """
    Calcular las 24 características de un circuito

    Parameters:
    -----------
    c : Circuito
        Circuito dinámico
    bm : ModeloRamas
        Modelo de probabilidades de rama (uniforme por defecto)

    Returns:
    --------
    VectorCaracteristicas
    """
    bm = bm or ModeloRamas.uniforme()
    if not bm.cubre(c):
        raise ValueError(f"❌ El modelo de ramas no cubre todos los condicionales de '{c.nombre}'")
    n = c.num_qubits
    valores = [
        expected_depth(c, bm, False),
        expected_depth(c, bm, True),
        expected_ops(c, bm, "UNITARY"),
        expected_ops(c, bm, "QUANTUM"),
        expected_ops(c, bm, "ALL"),
        float(len(c.system_qubits)),
        float(n),
        liveness(c, bm, False),
        liveness(c, bm, True),
        system_qubit_ratio(c),
        critical_two_qubit(c, bm, False),
        critical_two_qubit(c, bm, True),
        dynamic_depth_ratio(c, bm, False),
        dynamic_depth_ratio(c, bm, True),
        parallelism(c, bm, False) if n >= 2 else 0.0,
        parallelism(c, bm, True) if n >= 2 else 0.0,
        communication(c, bm, False)[0] if n >= 2 else 0.0,
        communication(c, bm, True)[0] if n >= 2 else 0.0,
    ]
    valores.extend(entanglement_features(c, bm))
    return VectorCaracteristicas(tuple(float(v) for v in valores))
