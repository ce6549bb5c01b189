"""
Simulador de Vector de Estado para Circuitos Dinámicos
======================================================

Simulador exacto de vector de estado con:
- Medición a mitad de circuito, reset y feed-forward
- Ruido estocástico de Pauli: despolarizante por compuerta (p1, p2),
  inversión de lectura (pm) y despolarizante de inactividad por capa (pidle)
- Ejecución por bloques de disparos con semillas derivadas del índice de
  bloque, de modo que los conteos no dependen del número de hilos
- Valores esperados de productos de Z sobre distribuciones de conteos

Dentro de cada bloque, los disparos se agrupan en trayectorias: cada evento
estocástico (resultado de medición, error de Pauli, inversión de lectura)
divide el grupo con muestreo binomial/multinomial.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Optional, Sequence, Union, Mapping
import math

import numpy as np

from circuito_dinamico import Circuito, Condicion, Instruccion, capas_asap, mediciones_finales


MAX_QUBITS = 25
TAMANO_BLOQUE = 1024


@dataclass(frozen=True)
class ModeloRuido:
    """
    Modelo de ruido de Pauli

    Parameters:
    -----------
    p1 : float
        Despolarizante de un qubit tras cada compuerta de un qubit
    p2 : float
        Despolarizante de dos qubits tras cada compuerta de dos qubits
    pm : float
        Probabilidad de invertir el bit registrado en una medición
    pidle : float
        Despolarizante por capa sobre qubits inactivos
    """
    p1: float = 0.0
    p2: float = 0.0
    pm: float = 0.0
    pidle: float = 0.0

    def __post_init__(self):
        for nombre in ("p1", "p2", "pm", "pidle"):
            valor = getattr(self, nombre)
            if not 0.0 <= valor <= 1.0:
                raise ValueError(f"❌ {nombre}={valor} fuera de [0, 1]")

    @property
    def es_ideal(self) -> bool:
        return self.p1 == self.p2 == self.pm == self.pidle == 0.0

    def a_dict(self) -> Dict[str, float]:
        return {"p1": self.p1, "p2": self.p2, "pm": self.pm, "pidle": self.pidle}

    @classmethod
    def desde_dict(cls, datos: Mapping[str, float]) -> "ModeloRuido":
        pidle = float(datos.get("pidle", 0.0))
        return cls(p1=float(datos.get("p1", pidle)), p2=float(datos.get("p2", 0.0)),
                   pm=float(datos.get("pm", 0.0)), pidle=pidle)


@dataclass(frozen=True)
class ResultadoDisparo:
    """
    Resultado de un grupo de disparos con la misma trayectoria clásica

    Parameters:
    -----------
    final_bits : str
        Registro clásico completo al final (clbit 0 a la izquierda)
    mcm_bits : dict
        clbit -> historia de bits registrados por mediciones a mitad de circuito
    disparos : int
        Multiplicidad del grupo
    """
    final_bits: str
    mcm_bits: Dict[int, Tuple[int, ...]]
    disparos: int = 1


@dataclass
class DistribucionConteos:
    """
    Histograma de resultados de una ejecución

    `registros` guarda el registro clásico completo por disparo; `mcm`
    guarda, por clbit medido a mitad de circuito, los conteos de cada bit.
    """
    registros: Dict[str, int]
    mcm: Dict[int, Dict[str, int]] = field(default_factory=dict)
    shots: int = 0
    seed: int = 0
    ruido: ModeloRuido = field(default_factory=ModeloRuido)
    registro_salida: Tuple[int, ...] = ()

    def marginal(self, clbits: Sequence[int]) -> Dict[str, int]:
        """Conteos marginales sobre los clbits dados, en ese orden."""
        resultado: Counter = Counter()
        for cadena, n in self.registros.items():
            resultado["".join(cadena[c] for c in clbits)] += n
        return dict(sorted(resultado.items()))

    @property
    def register(self) -> Dict[str, int]:
        return self.marginal(self.registro_salida)

    def probabilidades(self, clbits: Optional[Sequence[int]] = None) -> Dict[str, float]:
        conteos = self.register if clbits is None else self.marginal(clbits)
        total = sum(conteos.values())
        return {k: v / total for k, v in conteos.items()}

    def a_dict(self) -> dict:
        return {
            "register": self.register,
            "mcm": {f"c{k}": dict(sorted(v.items())) for k, v in sorted(self.mcm.items())},
            "records": dict(sorted(self.registros.items())),
            "output_clbits": list(self.registro_salida),
            "shots": self.shots,
            "seed": self.seed,
            "noise": self.ruido.a_dict(),
        }

    @classmethod
    def desde_dict(cls, datos: dict) -> "DistribucionConteos":
        try:
            return cls(
                registros={str(k): int(v) for k, v in datos["records"].items()},
                mcm={int(k[1:]): {str(b): int(n) for b, n in v.items()}
                     for k, v in datos.get("mcm", {}).items()},
                shots=int(datos["shots"]), seed=int(datos.get("seed", 0)),
                ruido=ModeloRuido.desde_dict(datos.get("noise", {})),
                registro_salida=tuple(datos.get("output_clbits", [])))
        except KeyError as e:
            raise ValueError(f"❌ Conteos JSON sin el campo {e}") from e


# ============================================================
# Matrices de compuertas
# ============================================================

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


def matriz_compuerta(nombre: str, params: Sequence[float] = ()) -> np.ndarray:
    """
    Matriz unitaria de una compuerta soportada

    Para compuertas de dos qubits el primer operando es el bit más
    significativo de la base |ab⟩.
    """
    if nombre in ("X", "Y", "Z"):
        return PAULIS[nombre]
    if nombre == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if nombre == "S":
        return np.diag([1, 1j])
    if nombre == "SDG":
        return np.diag([1, -1j])
    if nombre == "T":
        return np.diag([1, np.exp(1j * math.pi / 4)])
    if nombre in ("RX", "RY", "RZ", "P", "RZZ"):
        theta = float(params[0])
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        if nombre == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if nombre == "RY":
            return np.array([[c, -s], [s, c]], dtype=complex)
        if nombre == "RZ":
            return np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])
        if nombre == "P":
            return np.diag([1, np.exp(1j * theta)])
        fase = np.exp(-1j * theta / 2)
        return np.diag([fase, fase.conjugate(), fase.conjugate(), fase])
    if nombre == "CX":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if nombre == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if nombre == "SWAP":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    raise ValueError(f"❌ Compuerta sin matriz: {nombre}")


def aplicar_operador(psi: np.ndarray, U: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Aplicar U (2^k × 2^k) sobre los ejes `qubits` del tensor de estado."""
    k = len(qubits)
    tensor = U.reshape((2,) * (2 * k))
    psi = np.tensordot(tensor, psi, axes=(list(range(k, 2 * k)), list(qubits)))
    return np.moveaxis(psi, list(range(k)), list(qubits))


def estado_inicial(n: int) -> np.ndarray:
    psi = np.zeros((2,) * n, dtype=complex)
    psi[(0,) * n] = 1.0
    return psi


def _prob_uno(psi: np.ndarray, q: int) -> float:
    return float(np.sum(np.abs(np.take(psi, 1, axis=q)) ** 2))


def _colapsar(psi: np.ndarray, q: int, bit: int, prob: float) -> np.ndarray:
    psi = psi.copy()
    indice = [slice(None)] * psi.ndim
    indice[q] = 1 - bit
    psi[tuple(indice)] = 0.0
    return psi / math.sqrt(prob)


def simular_estado(c: Circuito) -> np.ndarray:
    """Vector de estado final de un circuito puramente unitario y sin ruido."""
    if c.num_qubits > MAX_QUBITS:
        raise ValueError(f"❌ {c.num_qubits} qubits exceden el límite de {MAX_QUBITS}")
    psi = estado_inicial(c.num_qubits)
    for ins in c.instrucciones:
        if not ins.es_compuerta:
            raise ValueError("❌ simular_estado solo admite compuertas")
        psi = aplicar_operador(psi, matriz_compuerta(ins.nombre, ins.params), ins.qubits)
    return psi


# ============================================================
# Plan de ejecución
# ============================================================

def _pasos_cuerpo(cuerpo: Sequence[Instruccion], n: int) -> List[tuple]:
    """Pasos de una rama: sus instrucciones y la inactividad de los demás qubits."""
    pasos = [(ins.tipo, ins) for ins in cuerpo]
    capas, _ = capas_asap(cuerpo)
    for q in range(n):
        inactivas = sum(1 for capa in capas if all(q not in cuerpo[i].qubits for i in capa))
        if inactivas:
            pasos.append(("idle", q, inactivas))
    return pasos


def plan_ejecucion(c: Circuito, con_inactividad: bool = True) -> List[tuple]:
    """
    Secuencia plana de pasos del simulador

    Un condicional se convierte en ("if", condición, n) seguido de los n
    pasos de su cuerpo. Los pasos ("idle", q, k) aplican k capas de
    inactividad sobre q antes de su siguiente instrucción base.
    """
    capas, capa_de = capas_asap(c.instrucciones)
    ultima = {q: 0 for q in range(c.num_qubits)}
    pasos: List[tuple] = []
    for i, ins in enumerate(c.instrucciones):
        if ins.es_condicional:
            cuerpo = _pasos_cuerpo(ins.cuerpo, c.num_qubits) if con_inactividad else \
                [(x.tipo, x) for x in ins.cuerpo]
            pasos.append(("if", ins.condicion, len(cuerpo)))
            pasos.extend(cuerpo)
            continue
        capa = capa_de[i]
        for q in ins.qubits:
            if con_inactividad and capa - ultima[q] - 1 > 0:
                pasos.append(("idle", q, capa - ultima[q] - 1))
            ultima[q] = capa
        pasos.append((ins.tipo, ins))
    if con_inactividad:
        for q in range(c.num_qubits):
            if len(capas) - ultima[q] > 0:
                pasos.append(("idle", q, len(capas) - ultima[q]))
    return pasos


# ============================================================
# Simulación por trayectorias
# ============================================================

@dataclass
class _Grupo:
    psi: np.ndarray
    disparos: int
    bits: Tuple[int, ...]
    historia: Tuple[Tuple[int, int], ...]


_PAULIS_1Q = ("X", "Y", "Z")
_PAULIS_2Q = tuple((a, b) for a in "IXYZ" for b in "IXYZ" if (a, b) != ("I", "I"))


def _despolarizar(grupo: _Grupo, qubits: Tuple[int, ...], p: float,
                  rng: np.random.Generator) -> List[_Grupo]:
    """Dividir el grupo según un canal despolarizante sobre 1 o 2 qubits."""
    if p <= 0.0:
        return [grupo]
    errores = int(rng.binomial(grupo.disparos, p))
    if errores == 0:
        return [grupo]
    opciones = _PAULIS_1Q if len(qubits) == 1 else _PAULIS_2Q
    por_pauli = rng.multinomial(errores, [1.0 / len(opciones)] * len(opciones))
    hijos = []
    if grupo.disparos - errores > 0:
        hijos.append(_Grupo(grupo.psi, grupo.disparos - errores, grupo.bits, grupo.historia))
    for letras, k in zip(opciones, por_pauli):
        if k == 0:
            continue
        psi = grupo.psi
        for q, letra in zip(qubits, letras if len(qubits) == 2 else (letras,)):
            if letra != "I":
                psi = aplicar_operador(psi, PAULIS[letra], (q,))
        hijos.append(_Grupo(psi, int(k), grupo.bits, grupo.historia))
    return hijos


def _proyectar(grupo: _Grupo, q: int, rng: np.random.Generator) -> List[Tuple[int, _Grupo]]:
    p1 = min(1.0, max(0.0, _prob_uno(grupo.psi, q)))
    unos = int(rng.binomial(grupo.disparos, p1))
    resultado = []
    for bit, k, prob in ((0, grupo.disparos - unos, 1.0 - p1), (1, unos, p1)):
        if k > 0:
            resultado.append((bit, _Grupo(_colapsar(grupo.psi, q, bit, prob), k,
                                          grupo.bits, grupo.historia)))
    return resultado


def _ejecutar_paso(paso: tuple, grupo: _Grupo, ruido: ModeloRuido,
                   rng: np.random.Generator) -> List[_Grupo]:
    tipo = paso[0]
    if tipo == "gate":
        ins = paso[1]
        psi = aplicar_operador(grupo.psi, matriz_compuerta(ins.nombre, ins.params), ins.qubits)
        p = ruido.p2 if len(ins.qubits) == 2 else ruido.p1
        return _despolarizar(_Grupo(psi, grupo.disparos, grupo.bits, grupo.historia),
                             ins.qubits, p, rng)
    if tipo == "idle":
        _, q, capas = paso
        p_eff = 0.75 * (1.0 - (1.0 - 4.0 * ruido.pidle / 3.0) ** capas)
        return _despolarizar(grupo, (q,), p_eff, rng)
    if tipo == "reset":
        q = paso[1].qubits[0]
        hijos = []
        for bit, hijo in _proyectar(grupo, q, rng):
            if bit == 1:
                hijo.psi = aplicar_operador(hijo.psi, _X, (q,))
            hijos.append(hijo)
        return hijos
    if tipo == "measure":
        ins = paso[1]
        q, cb = ins.qubits[0], ins.clbit
        hijos = []
        for bit, hijo in _proyectar(grupo, q, rng):
            invertidos = int(rng.binomial(hijo.disparos, ruido.pm)) if ruido.pm > 0 else 0
            for registrado, k in ((bit, hijo.disparos - invertidos), (1 - bit, invertidos)):
                if k == 0:
                    continue
                bits = list(hijo.bits)
                bits[cb] = registrado
                hijos.append(_Grupo(hijo.psi, k, tuple(bits), hijo.historia + ((cb, registrado),)))
        return hijos
    raise ValueError(f"❌ Paso desconocido: {tipo}")


def _simular_bloque(plan: List[tuple], c: Circuito, disparos: int, ruido: ModeloRuido,
                    rng: np.random.Generator) -> List[ResultadoDisparo]:
    """Simular un bloque de disparos recorriendo el árbol de trayectorias en profundidad."""
    pila = [(0, _Grupo(estado_inicial(c.num_qubits), disparos, (0,) * c.num_clbits, ()))]
    resultados: List[ResultadoDisparo] = []
    while pila:
        indice, grupo = pila.pop()
        while indice < len(plan):
            paso = plan[indice]
            indice += 1
            if paso[0] == "if":
                condicion: Condicion = paso[1]
                if not condicion.evaluar(grupo.bits):
                    indice += paso[2]
                continue
            hijos = _ejecutar_paso(paso, grupo, ruido, rng)
            for hijo in reversed(hijos[1:]):
                pila.append((indice, hijo))
            grupo = hijos[0]
        historia: Dict[int, Tuple[int, ...]] = {}
        for cb, bit in grupo.historia:
            historia[cb] = historia.get(cb, ()) + (bit,)
        resultados.append(ResultadoDisparo("".join(str(b) for b in grupo.bits), historia,
                                           grupo.disparos))
    return resultados


def _clbits_mitad_circuito(c: Circuito) -> set:
    finales = mediciones_finales(c)
    clbits = set()
    for i, ins in enumerate(c.instrucciones):
        if ins.es_medicion and i not in finales:
            clbits.add(ins.clbit)
        elif ins.es_condicional:
            clbits.update(x.clbit for x in ins.cuerpo if x.es_medicion)
    return clbits


def run(c: Circuito, shots: int, nm: Optional[ModeloRuido] = None, seed: int = 0,
        workers: int = 1) -> DistribucionConteos:
    """
    Ejecutar un circuito dinámico en el simulador

    Parameters:
    -----------
    c : Circuito
        Circuito a ejecutar (máximo 25 qubits)
    shots : int
        Número de disparos (≥ 1)
    nm : ModeloRuido
        Modelo de ruido (ideal por defecto)
    seed : int
        Semilla global; el bloque b usa SeedSequence([seed, b])
    workers : int
        Hilos para ejecutar bloques en paralelo (no altera los conteos)

    Returns:
    --------
    DistribucionConteos
    """
    nm = nm or ModeloRuido()
    if c.num_qubits > MAX_QUBITS:
        raise ValueError(f"❌ {c.num_qubits} qubits exceden el límite de {MAX_QUBITS}")
    if shots < 1:
        raise ValueError("❌ shots debe ser al menos 1")
    plan = plan_ejecucion(c, con_inactividad=nm.pidle > 0)
    bloques = [min(TAMANO_BLOQUE, shots - inicio) for inicio in range(0, shots, TAMANO_BLOQUE)]

    def ejecutar(b: int) -> List[ResultadoDisparo]:
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), b]))
        return _simular_bloque(plan, c, bloques[b], nm, rng)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            por_bloque = list(pool.map(ejecutar, range(len(bloques))))
    else:
        por_bloque = [ejecutar(b) for b in range(len(bloques))]

    registros: Counter = Counter()
    mcm: Dict[int, Counter] = {cb: Counter() for cb in sorted(_clbits_mitad_circuito(c))}
    for resultados in por_bloque:
        for r in resultados:
            registros[r.final_bits] += r.disparos
            for cb, historia in r.mcm_bits.items():
                if cb in mcm:
                    for bit in historia:
                        mcm[cb][str(bit)] += r.disparos
    return DistribucionConteos(
        registros=dict(sorted(registros.items())),
        mcm={cb: dict(sorted(v.items())) for cb, v in mcm.items()},
        shots=shots, seed=seed, ruido=nm, registro_salida=c.registro_salida)


# ============================================================
# Valores esperados
# ============================================================

def expectation_z(conteos: Union[DistribucionConteos, Mapping[str, float]],
                  qubits: Sequence[Union[int, Sequence[int]]],
                  signs: Optional[Sequence[float]] = None) -> float:
    """
    Valor esperado de una combinación de productos de Z

    Parameters:
    -----------
    conteos : DistribucionConteos o dict
        Conteos o probabilidades por cadena de bits (se usa el registro de salida)
    qubits : list
        Términos: un índice de bit (Z simple) o una lista de índices (producto de Z)
    signs : list de float, opcional
        Coeficiente por término; por defecto el promedio 1/len(qubits)

    Returns:
    --------
    float
        Σ_t c_t Σ_x p(x)·(−1)^{Σ_{i∈t} x_i}
    """
    if isinstance(conteos, DistribucionConteos):
        conteos = conteos.register
    total = float(sum(conteos.values()))
    if total <= 0:
        raise ValueError("❌ Distribución vacía")
    terminos = [(t,) if isinstance(t, (int, np.integer)) else tuple(t) for t in qubits]
    coeficientes = list(signs) if signs is not None else [1.0 / len(terminos)] * len(terminos)
    if len(coeficientes) != len(terminos):
        raise ValueError("❌ Se requiere un coeficiente por término")
    valor = 0.0
    for cadena, n in conteos.items():
        for termino, coef in zip(terminos, coeficientes):
            if any(i < 0 or i >= len(cadena) for i in termino):
                raise ValueError(f"❌ Índice de bit fuera de rango en {termino}")
            paridad = sum(int(cadena[i]) for i in termino) % 2
            valor += coef * (n / total) * (-1) ** paridad
    return float(valor)
