import init, { detector_2d, reconstruct, cost_curves } from "./pkg/rankone_wasm.js";

const num = (id) => Number(document.getElementById(id).value);

function report(id, text, failed = false) {
  const el = document.getElementById(id);
  el.textContent = text;
  el.className = failed ? "out err" : "out";
}

function guarded(outId, fn) {
  return () => {
    try {
      fn();
    } catch (e) {
      report(outId, String(e.message ?? e), true);
    }
  };
}

// Axes mapping data ranges onto a canvas with a margin.
function frame(canvas, xs, ys) {
  const ctx = canvas.getContext("2d");
  const pad = 36;
  const [w, h] = [canvas.width - 2 * pad, canvas.height - 2 * pad];
  const [x0, x1] = xs;
  let [y0, y1] = ys;
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#555";
  ctx.font = "11px system-ui";
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, pad + h);
  ctx.fillText(String(x0), pad, pad + h + 14);
  ctx.fillText(String(x1), pad + w - 16, pad + h + 14);
  return {
    ctx,
    x: (v) => pad + ((v - x0) / (x1 - x0)) * w,
    y: (v) => pad + h - ((v - y0) / (y1 - y0)) * h,
  };
}

function line(f, xs, ys, color) {
  f.ctx.strokeStyle = color;
  f.ctx.lineWidth = 1.5;
  f.ctx.beginPath();
  xs.forEach((x, i) => {
    const [px, py] = [f.x(x), f.y(ys[i])];
    i === 0 ? f.ctx.moveTo(px, py) : f.ctx.lineTo(px, py);
  });
  f.ctx.stroke();
}

function drawDetector() {
  const view = detector_2d(num("det-r"), num("det-m"), num("det-eps"));
  const coords = view.coords;
  const canvas = document.getElementById("det-canvas");
  const f = frame(canvas, [0, 1], [0, 1]);
  f.ctx.fillStyle = "#1f4e9c";
  const dot = coords.length > 20000 ? 1 : 2;
  for (let i = 0; i < coords.length; i += 2) {
    f.ctx.fillRect(f.x(coords[i]) - dot / 2, f.y(coords[i + 1]) - dot / 2, dot, dot);
  }
  report("det-out", `${view.regime} regime, ${view.size} points, base dispersion ${view.target.toPrecision(4)}`);
  view.free();
}

function drawRecovery() {
  const eps = num("rec-eps");
  const v = reconstruct(num("rec-r"), num("rec-m"), num("rec-d"), eps, BigInt(num("rec-seed")));
  const truth = v.truth;
  const approx = v.approx;
  const ts = truth.map((_, i) => i / (truth.length - 1));
  const all = [...truth, ...approx];
  const f = frame(document.getElementById("rec-canvas"), [0, 1], [Math.min(...all), Math.max(...all)]);
  line(f, ts, truth, "#000");
  line(f, ts, approx, "#c0392b");
  const det = Number(v.detector_evals);
  const interp = Number(v.interpolation_evals);
  report(
    "rec-out",
    `norm ${v.norm.toFixed(4)}, error ${v.error.toExponential(2)} (eps ${eps})\n` +
      `calls: ${det} of ${v.detector_size} detector points + ${interp} for interpolation = ${det + interp}`,
  );
  v.free();
}

function drawCosts() {
  const dMax = num("cost-d");
  const c = cost_curves(num("cost-r"), num("cost-m"), num("cost-eps"), dMax);
  const [bound, worst, halton] = [c.bound, c.worst_case, c.halton];
  const ds = Array.from(bound, (_, i) => i + 1);
  const all = [...bound, ...worst, ...halton];
  const f = frame(document.getElementById("cost-canvas"), [1, dMax], [Math.min(...all), Math.max(...all)]);
  line(f, ds, halton, "#aaa");
  line(f, ds, bound, "#1f4e9c");
  line(f, ds, worst, "#000");
  report("cost-out", `at d = ${dMax}: bound 10^${bound[dMax - 1].toFixed(2)}, worst case 10^${worst[dMax - 1].toFixed(2)}`);
  c.free();
}

await init();
for (const [button, out, fn] of [
  ["det-go", "det-out", drawDetector],
  ["rec-go", "rec-out", drawRecovery],
  ["cost-go", "cost-out", drawCosts],
]) {
  const run = guarded(out, fn);
  document.getElementById(button).addEventListener("click", run);
  run();
}
