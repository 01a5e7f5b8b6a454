export class CostCurves {
    static __wrap(ptr) {
        const obj = Object.create(CostCurves.prototype);
        obj.__wbg_ptr = ptr;
        CostCurvesFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CostCurvesFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_costcurves_free(ptr, 0);
    }
    /**
     * `log10` of the predicted bound, one entry per dimension.
     * @returns {Float64Array}
     */
    get bound() {
        const ret = wasm.costcurves_bound(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * `log10` of the size of a Halton detector.
     * @returns {Float64Array}
     */
    get halton() {
        const ret = wasm.costcurves_halton(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * `log10(|P| + m)` with `|P|` from the size formula.
     * @returns {Float64Array}
     */
    get worst_case() {
        const ret = wasm.costcurves_worst_case(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) CostCurves.prototype[Symbol.dispose] = CostCurves.prototype.free;

export class DetectorView {
    static __wrap(ptr) {
        const obj = Object.create(DetectorView.prototype);
        obj.__wbg_ptr = ptr;
        DetectorViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        DetectorViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_detectorview_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get coords() {
        const ret = wasm.detectorview_coords(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {string}
     */
    get regime() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.detectorview_regime(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @returns {number}
     */
    get size() {
        const ret = wasm.detectorview_size(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * Dispersion the base set was built for.
     * @returns {number}
     */
    get target() {
        const ret = wasm.detectorview_target(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) DetectorView.prototype[Symbol.dispose] = DetectorView.prototype.free;

export class ReconstructionView {
    static __wrap(ptr) {
        const obj = Object.create(ReconstructionView.prototype);
        obj.__wbg_ptr = ptr;
        ReconstructionViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ReconstructionViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_reconstructionview_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get approx() {
        const ret = wasm.reconstructionview_approx(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {bigint}
     */
    get detector_evals() {
        const ret = wasm.reconstructionview_detector_evals(this.__wbg_ptr);
        return BigInt.asUintN(64, ret);
    }
    /**
     * @returns {number}
     */
    get detector_size() {
        const ret = wasm.reconstructionview_detector_size(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * Grid estimate of the sup-norm error.
     * @returns {number}
     */
    get error() {
        const ret = wasm.reconstructionview_error(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {bigint}
     */
    get interpolation_evals() {
        const ret = wasm.reconstructionview_interpolation_evals(this.__wbg_ptr);
        return BigInt.asUintN(64, ret);
    }
    /**
     * @returns {number}
     */
    get norm() {
        const ret = wasm.reconstructionview_norm(this.__wbg_ptr);
        return ret;
    }
    /**
     * `f(t, .., t)` at `SAMPLES` equally spaced `t`.
     * @returns {Float64Array}
     */
    get truth() {
        const ret = wasm.reconstructionview_truth(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) ReconstructionView.prototype[Symbol.dispose] = ReconstructionView.prototype.free;

/**
 * Base-10 logarithms of the cost bound and the worst-case cost for
 * `d = 1..=d_max`.
 * @param {number} r
 * @param {number} m
 * @param {number} eps
 * @param {number} d_max
 * @returns {CostCurves}
 */
export function cost_curves(r, m, eps, d_max) {
    const ret = wasm.cost_curves(r, m, eps, d_max);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return CostCurves.__wrap(ret[0]);
}

/**
 * Detector for `d = 2`, as a flat `x0, y0, x1, y1, ..` array.
 * @param {number} r
 * @param {number} m
 * @param {number} eps
 * @returns {DetectorView}
 */
export function detector_2d(r, m, eps) {
    const ret = wasm.detector_2d(r, m, eps);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return DetectorView.__wrap(ret[0]);
}

/**
 * Recovers a random member of the class and samples it and its
 * approximation along the diagonal of the cube.
 * @param {number} r
 * @param {number} m
 * @param {number} d
 * @param {number} eps
 * @param {bigint} seed
 * @returns {ReconstructionView}
 */
export function reconstruct(r, m, d, eps, seed) {
    const ret = wasm.reconstruct(r, m, d, eps, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ReconstructionView.__wrap(ret[0]);
}

/**
 * @param {number} r
 * @param {number} m
 * @returns {string}
 */
export function regime_of(r, m) {
    let deferred1_0;
    let deferred1_1;
    try {
        const ret = wasm.regime_of(r, m);
        deferred1_0 = ret[0];
        deferred1_1 = ret[1];
        return getStringFromWasm0(ret[0], ret[1]);
    } finally {
        wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
    }
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./rankone_wasm_bg.js": import0,
    };
}

const CostCurvesFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_costcurves_free(ptr, 1));
const DetectorViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_detectorview_free(ptr, 1));
const ReconstructionViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_reconstructionview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('rankone_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
