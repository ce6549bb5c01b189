"""
Representación de Circuitos Cuánticos Dinámicos
===============================================

Este módulo implementa la representación independiente del hardware de
circuitos dinámicos (medición a mitad de circuito + feed-forward), incluyendo:
- Instrucciones: compuertas, mediciones, resets y bloques condicionales
- Condiciones clásicas por igualdad de valor o por paridad (XOR)
- Constructor con validación de índices, aridad y causalidad
- Planificación por capas ASAP (base y ramas) para las métricas de profundidad
- Eliminación de mediciones finales y clasificación de qubits para liveness
- Serialización al esquema JSON de intercambio entre etapas

Convención de bits: en toda cadena de bits el clbit 0 es el carácter
de más a la izquierda.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Optional, Sequence, FrozenSet, Iterable
import json


# Compuertas soportadas: nombre -> (aridad, número de parámetros)
COMPUERTAS: Dict[str, Tuple[int, int]] = {
    "H": (1, 0), "X": (1, 0), "Y": (1, 0), "Z": (1, 0),
    "S": (1, 0), "SDG": (1, 0), "T": (1, 0),
    "RX": (1, 1), "RY": (1, 1), "RZ": (1, 1), "P": (1, 1),
    "CX": (2, 0), "CZ": (2, 0), "SWAP": (2, 0), "RZZ": (2, 1),
}

COMPUERTAS_CLIFFORD = {"H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP"}

GATE = "gate"
MEASURE = "measure"
RESET = "reset"
CONDITIONAL = "conditional"


@dataclass(frozen=True)
class Condicion:
    """
    Condición clásica de un bloque feed-forward

    Parameters:
    -----------
    clbits : tuple de int
        Bits clásicos evaluados, en orden
    predicado : str
        "eq" (igualdad con una cadena de bits) o "parity" (XOR de los bits)
    valor : str
        Cadena de bits para "eq"; "0" o "1" para "parity"
    """
    clbits: Tuple[int, ...]
    predicado: str
    valor: str

    def __post_init__(self):
        if len(self.clbits) == 0:
            raise ValueError("❌ Una condición necesita al menos un bit clásico")
        if self.predicado == "eq":
            if len(self.valor) != len(self.clbits) or set(self.valor) - {"0", "1"}:
                raise ValueError(
                    f"❌ Valor '{self.valor}' incompatible con {len(self.clbits)} bits de condición")
        elif self.predicado == "parity":
            if self.valor not in ("0", "1"):
                raise ValueError(f"❌ El bit de paridad debe ser 0 o 1, no '{self.valor}'")
        else:
            raise ValueError(f"❌ Predicado desconocido: {self.predicado}")

    @property
    def es_paridad(self) -> bool:
        return self.predicado == "parity"

    def evaluar(self, bits: Sequence[int]) -> bool:
        """Evaluar la condición sobre el registro clásico completo."""
        valores = [int(bits[c]) for c in self.clbits]
        if self.es_paridad:
            return sum(valores) % 2 == int(self.valor)
        return "".join(str(v) for v in valores) == self.valor


@dataclass(frozen=True)
class Instruccion:
    """
    Instrucción de un circuito dinámico

    El campo `tipo` es uno de GATE, MEASURE, RESET o CONDITIONAL. Una
    compuerta lleva `nombre`, `qubits` y `params`; una medición lleva
    (qubits[0], clbit); un reset lleva qubits[0]; un condicional lleva
    `condicion` y `cuerpo` (sin condicionales anidados).
    """
    tipo: str
    nombre: str = ""
    qubits: Tuple[int, ...] = ()
    params: Tuple[float, ...] = ()
    clbit: Optional[int] = None
    condicion: Optional[Condicion] = None
    cuerpo: Tuple["Instruccion", ...] = ()

    @property
    def es_compuerta(self) -> bool:
        return self.tipo == GATE

    @property
    def es_medicion(self) -> bool:
        return self.tipo == MEASURE

    @property
    def es_reset(self) -> bool:
        return self.tipo == RESET

    @property
    def es_condicional(self) -> bool:
        return self.tipo == CONDITIONAL

    @property
    def es_dos_qubits(self) -> bool:
        return self.tipo == GATE and len(self.qubits) == 2

    @property
    def qubits_tocados(self) -> Tuple[int, ...]:
        """Qubits sobre los que actúa la instrucción (o su cuerpo)."""
        if self.es_condicional:
            vistos: List[int] = []
            for instr in self.cuerpo:
                for q in instr.qubits:
                    if q not in vistos:
                        vistos.append(q)
            return tuple(vistos)
        return self.qubits


@dataclass(frozen=True)
class Circuito:
    """
    Circuito dinámico inmutable

    Parameters:
    -----------
    num_qubits, num_clbits : int
        Tamaño de los registros cuántico y clásico
    instrucciones : tuple de Instruccion
        Secuencia ordenada
    system_qubits : frozenset de int
        Qubits portadores de información (n_s)
    nombre : str
        Nombre del benchmark
    params : dict
        Parámetros numéricos del benchmark
    registros : dict
        Registros con nombre (p. ej. "out") -> lista de clbits
    """
    num_qubits: int
    num_clbits: int
    instrucciones: Tuple[Instruccion, ...]
    system_qubits: FrozenSet[int]
    nombre: str = ""
    params: Dict[str, float] = field(default_factory=dict)
    registros: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def condicionales(self) -> List[Tuple[int, Instruccion]]:
        """Pares (índice, instrucción) de todos los bloques condicionales."""
        return [(i, ins) for i, ins in enumerate(self.instrucciones) if ins.es_condicional]

    @property
    def bits_condicion(self) -> List[int]:
        """Bits clásicos distintos referenciados por condiciones (n_a)."""
        bits: List[int] = []
        for _, ins in self.condicionales:
            for c in ins.condicion.clbits:
                if c not in bits:
                    bits.append(c)
        return sorted(bits)

    @property
    def registro_salida(self) -> Tuple[int, ...]:
        """Clbits del registro de salida; por defecto todos."""
        return tuple(self.registros.get("out", range(self.num_clbits)))

    def reemplazar(self, instrucciones: Iterable[Instruccion], **cambios) -> "Circuito":
        """Copia del circuito con otra lista de instrucciones."""
        datos = dict(num_qubits=self.num_qubits, num_clbits=self.num_clbits,
                     instrucciones=tuple(instrucciones), system_qubits=self.system_qubits,
                     nombre=self.nombre, params=dict(self.params), registros=dict(self.registros))
        datos.update(cambios)
        return Circuito(**datos)


class _ConstructorBase:
    """Métodos comunes para agregar compuertas, mediciones y resets."""

    def __init__(self, num_qubits: int, num_clbits: int):
        self.num_qubits = num_qubits
        self.num_clbits = num_clbits
        self._instrucciones: List[Instruccion] = []

    def _validar_qubit(self, q: int):
        if not 0 <= q < self.num_qubits:
            raise ValueError(f"❌ Qubit {q} fuera de rango (num_qubits={self.num_qubits})")

    def _validar_clbit(self, c: int):
        if not 0 <= c < self.num_clbits:
            raise ValueError(f"❌ Clbit {c} fuera de rango (num_clbits={self.num_clbits})")

    def gate(self, nombre: str, qubits: Sequence[int], params: Sequence[float] = ()):
        """Agregar una compuerta validando nombre, aridad y operandos."""
        nombre = nombre.upper()
        if nombre not in COMPUERTAS:
            raise ValueError(f"❌ Compuerta no soportada: {nombre}")
        aridad, n_params = COMPUERTAS[nombre]
        qubits = tuple(int(q) for q in qubits)
        if len(qubits) != aridad:
            raise ValueError(f"❌ {nombre} requiere {aridad} qubit(s), recibió {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"❌ duplicate operand en {nombre}{qubits}")
        if len(params) != n_params:
            raise ValueError(f"❌ {nombre} requiere {n_params} parámetro(s)")
        for q in qubits:
            self._validar_qubit(q)
        self._instrucciones.append(
            Instruccion(GATE, nombre=nombre, qubits=qubits, params=tuple(float(p) for p in params)))
        return self

    def h(self, q): return self.gate("H", [q])
    def x(self, q): return self.gate("X", [q])
    def y(self, q): return self.gate("Y", [q])
    def z(self, q): return self.gate("Z", [q])
    def s(self, q): return self.gate("S", [q])
    def sdg(self, q): return self.gate("SDG", [q])
    def t(self, q): return self.gate("T", [q])
    def rx(self, theta, q): return self.gate("RX", [q], [theta])
    def ry(self, theta, q): return self.gate("RY", [q], [theta])
    def rz(self, theta, q): return self.gate("RZ", [q], [theta])
    def p(self, lam, q): return self.gate("P", [q], [lam])
    def cx(self, c, t): return self.gate("CX", [c, t])
    def cz(self, a, b): return self.gate("CZ", [a, b])
    def swap(self, a, b): return self.gate("SWAP", [a, b])
    def rzz(self, theta, a, b): return self.gate("RZZ", [a, b], [theta])

    def cp(self, lam: float, a: int, b: int):
        """Fase controlada descompuesta en P y CX."""
        self.p(lam / 2, a)
        self.cx(a, b)
        self.p(-lam / 2, b)
        self.cx(a, b)
        self.p(lam / 2, b)
        return self

    def measure(self, q: int, c: int):
        self._validar_qubit(q)
        self._validar_clbit(c)
        self._instrucciones.append(Instruccion(MEASURE, qubits=(int(q),), clbit=int(c)))
        return self

    def reset(self, q: int):
        self._validar_qubit(q)
        self._instrucciones.append(Instruccion(RESET, qubits=(int(q),)))
        return self

    def agregar(self, instr: Instruccion):
        """Agregar una instrucción ya construida (revalidada)."""
        if instr.es_compuerta:
            return self.gate(instr.nombre, instr.qubits, instr.params)
        if instr.es_medicion:
            return self.measure(instr.qubits[0], instr.clbit)
        if instr.es_reset:
            return self.reset(instr.qubits[0])
        raise ValueError("❌ Tipo de instrucción no admitido aquí")


class _ConstructorRama(_ConstructorBase):
    """Constructor del cuerpo de un condicional (sin anidamiento)."""

    def __init__(self, padre: "ConstructorCircuito", condicion: Condicion):
        super().__init__(padre.num_qubits, padre.num_clbits)
        self._padre = padre
        self._condicion = condicion

    def __enter__(self):
        return self

    def __exit__(self, tipo, valor, traza):
        if tipo is None:
            self._padre._agregar_condicional(self._condicion, self._instrucciones)
        return False


class ConstructorCircuito(_ConstructorBase):
    """
    Constructor de circuitos dinámicos

    Ejemplo:
    --------
    >>> cc = build_circuit(3, 1)
    >>> cc.h(0).h(2).cx(0, 1).cx(2, 1).measure(1, 0)
    >>> with cc.si_igual([0], "1") as rama:
    ...     rama.x(2)
    >>> circuito = cc.finalizar(system_qubits=[0, 2])
    """

    def si_igual(self, clbits: Sequence[int], valor: str) -> _ConstructorRama:
        """Abrir un bloque ejecutado si los bits valen exactamente `valor`."""
        return self._abrir(Condicion(tuple(int(c) for c in clbits), "eq", str(valor)))

    def si_paridad(self, clbits: Sequence[int], bit: int = 1) -> _ConstructorRama:
        """Abrir un bloque ejecutado si el XOR de los bits vale `bit`."""
        return self._abrir(Condicion(tuple(int(c) for c in clbits), "parity", str(int(bit))))

    def _abrir(self, condicion: Condicion) -> _ConstructorRama:
        for c in condicion.clbits:
            self._validar_clbit(c)
        return _ConstructorRama(self, condicion)

    def condicional(self, condicion: Condicion, cuerpo: Sequence[Instruccion]):
        """Agregar un condicional a partir de instrucciones ya construidas."""
        rama = self._abrir(condicion)
        for instr in cuerpo:
            if instr.es_condicional:
                raise ValueError("❌ No se admiten condicionales anidados")
            rama.agregar(instr)
        self._agregar_condicional(condicion, rama._instrucciones)
        return self

    def _agregar_condicional(self, condicion: Condicion, cuerpo: List[Instruccion]):
        if not cuerpo:
            raise ValueError("❌ El cuerpo de un condicional no puede estar vacío")
        self._instrucciones.append(
            Instruccion(CONDITIONAL, condicion=condicion, cuerpo=tuple(cuerpo)))

    def finalizar(self, system_qubits: Optional[Iterable[int]] = None, nombre: str = "",
                  params: Optional[Dict[str, float]] = None,
                  registros: Optional[Dict[str, Sequence[int]]] = None) -> Circuito:
        """
        Cerrar el circuito verificando la causalidad de las condiciones

        Returns:
        --------
        Circuito
            Circuito inmutable. Sin `system_qubits` se asumen todos los qubits.
        """
        escritos = set()
        for i, instr in enumerate(self._instrucciones):
            if instr.es_medicion:
                escritos.add(instr.clbit)
            elif instr.es_condicional:
                faltantes = [c for c in instr.condicion.clbits if c not in escritos]
                if faltantes:
                    raise ValueError(
                        f"❌ Condicional #{i} usa clbits {faltantes} sin medición previa")
                escritos.update(x.clbit for x in instr.cuerpo if x.es_medicion)

        sistema = frozenset(range(self.num_qubits)) if system_qubits is None else frozenset(system_qubits)
        for q in sistema:
            self._validar_qubit(q)
        regs = {k: tuple(int(c) for c in v) for k, v in (registros or {}).items()}
        for bits in regs.values():
            for c in bits:
                self._validar_clbit(c)
        return Circuito(self.num_qubits, self.num_clbits, tuple(self._instrucciones), sistema,
                        nombre, dict(params or {}), regs)


def build_circuit(num_qubits: int, num_clbits: int) -> ConstructorCircuito:
    """Crear un constructor vacío con los tamaños de registro dados."""
    if num_qubits < 1 or num_clbits < 1:
        raise ValueError("❌ Se requiere al menos un qubit y un bit clásico")
    return ConstructorCircuito(int(num_qubits), int(num_clbits))


# ============================================================
# Planificación por capas
# ============================================================

@dataclass(frozen=True)
class PlanCapas:
    """
    Planificación ASAP de un circuito

    Parameters:
    -----------
    base_layers : tuple
        Índices de instrucciones base por capa (capa 1 primero)
    capa_de : dict
        Índice de instrucción base -> capa (1-based)
    mcm_layer_count : int
        Capas base con al menos una medición a mitad de circuito (l_mcm)
    ff_layer_count : int
        Una capa por condicional cuando se cuenta el feed-forward (l_ff)
    branch_depths : dict
        Índice del condicional -> profundidad ASAP de su cuerpo (D_i)
    """
    base_layers: Tuple[Tuple[int, ...], ...]
    capa_de: Dict[int, int]
    mcm_layer_count: int
    ff_layer_count: int
    branch_depths: Dict[int, int]

    @property
    def base_depth(self) -> int:
        return len(self.base_layers)

    def l_total(self, profundidad_ramas_esperada: float = 0.0) -> float:
        """D_base + capas FF + profundidad esperada de ramas dada por el llamador."""
        return self.base_depth + self.ff_layer_count + profundidad_ramas_esperada


def capas_asap(instrucciones: Sequence[Instruccion]) -> Tuple[List[List[int]], Dict[int, int]]:
    """
    Capas ASAP de una lista plana (sin condicionales)

    Cada instrucción se coloca en la primera capa posterior a la última
    ocupación de sus operandos; los empates se resuelven por orden.
    """
    libre: Dict[int, int] = {}
    capas: List[List[int]] = []
    capa_de: Dict[int, int] = {}
    for i, instr in enumerate(instrucciones):
        if instr.es_condicional:
            continue
        capa = max((libre.get(q, 1) for q in instr.qubits), default=1)
        while len(capas) < capa:
            capas.append([])
        capas[capa - 1].append(i)
        capa_de[i] = capa
        for q in instr.qubits:
            libre[q] = capa + 1
    return capas, capa_de


def profundidad(instrucciones: Sequence[Instruccion]) -> int:
    """Profundidad ASAP de una lista plana de instrucciones."""
    return len(capas_asap(instrucciones)[0])


def mediciones_finales(c: Circuito) -> set:
    """
    Índices de mediciones base que son finales

    Una medición es final si ninguna instrucción posterior (base o de
    rama) actúa sobre su qubit y ninguna condición posterior lee su clbit.
    """
    finales = set()
    instrs = c.instrucciones
    for i, instr in enumerate(instrs):
        if not instr.es_medicion:
            continue
        q, cb = instr.qubits[0], instr.clbit
        final = True
        for posterior in instrs[i + 1:]:
            if q in posterior.qubits_tocados:
                final = False
                break
            if posterior.es_condicional and cb in posterior.condicion.clbits:
                final = False
                break
        if final:
            finales.add(i)
    return finales


def layer_schedule(c: Circuito, include_ff: bool = True) -> PlanCapas:
    """
    Planificación por capas de un circuito dinámico

    Parameters:
    -----------
    c : Circuito
        Circuito a planificar
    include_ff : bool
        Si True, cada condicional aporta una capa de feed-forward

    Returns:
    --------
    PlanCapas
        Capas base, l_mcm, l_ff y profundidad de cada rama
    """
    capas, capa_de = capas_asap(c.instrucciones)
    finales = mediciones_finales(c)
    l_mcm = sum(
        1 for capa in capas
        if any(c.instrucciones[i].es_medicion and i not in finales for i in capa))
    ramas = {i: profundidad(ins.cuerpo) for i, ins in c.condicionales}
    l_ff = len(ramas) if include_ff else 0
    return PlanCapas(tuple(tuple(capa) for capa in capas), capa_de, l_mcm, l_ff, ramas)


def strip_final_measurements(c: Circuito) -> Circuito:
    """Eliminar las mediciones finales que no alimentan ninguna condición."""
    finales = mediciones_finales(c)
    return c.reemplazar(ins for i, ins in enumerate(c.instrucciones) if i not in finales)


def classify_qubits(c: Circuito) -> Tuple[int, int, List[int]]:
    """
    Clasificar qubits para la métrica de liveness

    Returns:
    --------
    Tuple[int, int, List[int]]
        (n1, n2, D_pre por cada qubit de n1 en orden de índice). n1 son los
        qubits cuya última operación es una medición a mitad de circuito.
    """
    _, capa_de = capas_asap(c.instrucciones)
    ultima: Dict[int, int] = {}
    for i, instr in enumerate(c.instrucciones):
        for q in instr.qubits_tocados:
            ultima[q] = i
    pre_depths = []
    for q in range(c.num_qubits):
        i = ultima.get(q)
        if i is not None and c.instrucciones[i].es_medicion:
            pre_depths.append(capa_de[i] - 1)
    n1 = len(pre_depths)
    return n1, c.num_qubits - n1, pre_depths


# ============================================================
# Esquema JSON
# ============================================================

def _instruccion_a_dict(instr: Instruccion) -> dict:
    if instr.es_compuerta:
        datos = {"gate": instr.nombre, "qubits": list(instr.qubits)}
        if instr.params:
            datos["params"] = list(instr.params)
        return datos
    if instr.es_medicion:
        return {"measure": instr.qubits[0], "clbit": instr.clbit}
    if instr.es_reset:
        return {"reset": instr.qubits[0]}
    cond = instr.condicion
    val = int(cond.valor) if cond.es_paridad else cond.valor
    return {"if": {"bits": list(cond.clbits), "pred": cond.predicado, "val": val},
            "body": [_instruccion_a_dict(x) for x in instr.cuerpo]}


def circuito_a_dict(c: Circuito) -> dict:
    """Convertir un circuito al esquema JSON de intercambio."""
    return {
        "name": c.nombre,
        "params": dict(c.params),
        "qubits": c.num_qubits,
        "clbits": c.num_clbits,
        "system_qubits": sorted(c.system_qubits),
        "registers": {k: list(v) for k, v in c.registros.items()},
        "instructions": [_instruccion_a_dict(i) for i in c.instrucciones],
    }


def _agregar_desde_dict(constructor: _ConstructorBase, datos: dict):
    if "gate" in datos:
        constructor.gate(datos["gate"], datos["qubits"], datos.get("params", []))
    elif "measure" in datos:
        constructor.measure(datos["measure"], datos["clbit"])
    elif "reset" in datos:
        constructor.reset(datos["reset"])
    elif "if" in datos:
        if not isinstance(constructor, ConstructorCircuito):
            raise ValueError("❌ No se admiten condicionales anidados")
        cond = datos["if"]
        if cond["pred"] == "parity":
            rama = constructor.si_paridad(cond["bits"], int(cond["val"]))
        else:
            rama = constructor.si_igual(cond["bits"], str(cond["val"]))
        with rama:
            for sub in datos["body"]:
                _agregar_desde_dict(rama, sub)
    else:
        raise ValueError(f"❌ Instrucción JSON no reconocida: {datos}")


def circuito_desde_dict(datos: dict) -> Circuito:
    """Reconstruir (y validar) un circuito desde el esquema JSON."""
    try:
        constructor = build_circuit(datos["qubits"], datos["clbits"])
        for instr in datos["instructions"]:
            _agregar_desde_dict(constructor, instr)
        return constructor.finalizar(datos.get("system_qubits"), datos.get("name", ""),
                                     datos.get("params", {}), datos.get("registers", {}))
    except KeyError as e:
        raise ValueError(f"❌ Campo faltante en circuito JSON: {e}") from e


def circuito_a_json(c: Circuito) -> str:
    return json.dumps(circuito_a_dict(c), indent=2, sort_keys=True)


def circuito_desde_json(texto: str) -> Circuito:
    return circuito_desde_dict(json.loads(texto))
