import init, {
  wigner_rotation_explorer,
  pst_entropy_curve,
  bell_concurrence_curve,
} from "./pkg/rqi_bundle_wasm.js";

const STEPS = 12;
const num = (id) => parseFloat(document.getElementById(id).value);

function plot(canvas, xs, ys, yMin, yMax) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, 10, w - pad - 10, h - pad - 10);
  const sx = (x) => pad + ((x - xs[0]) / (xs[xs.length - 1] - xs[0] || 1)) * (w - pad - 10);
  const sy = (y) => h - pad - ((y - yMin) / (yMax - yMin || 1)) * (h - pad - 20);
  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  ctx.fillText(yMax.toPrecision(3), 2, 18);
  ctx.fillText(yMin.toPrecision(3), 2, h - pad);
  ctx.fillText("0", pad, h - pad + 16);
  ctx.fillText(xs[xs.length - 1].toFixed(2), w - 40, h - pad + 16);
  ctx.fillText("rapidity", w / 2 - 20, h - 8);
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
  ctx.fillStyle = "#1565c0";
  xs.forEach((x, i) => ctx.fillRect(sx(x) - 2, sy(ys[i]) - 2, 4, 4));
}

function wigner() {
  const out = document.getElementById("w-out");
  try {
    const r = wigner_rotation_explorer(
      num("w-m"), num("w-px"), num("w-py"), num("w-pz"),
      num("w-ax"), num("w-ay"), num("w-az"), num("w-eta"));
    const f = (v) => v.toFixed(6);
    out.className = "";
    out.textContent =
      `rapidity  ${num("w-eta").toFixed(2)}\n` +
      `angle     ${f(r[0])} rad\n` +
      `axis      (${f(r[1])}, ${f(r[2])}, ${f(r[3])})\n` +
      `boosted p (${f(r[4])}, ${f(r[5])}, ${f(r[6])})`;
  } catch (e) {
    out.className = "err";
    out.textContent = String(e);
  }
}

function sweep(prefix, fn, fixedRange) {
  const status = document.getElementById(`${prefix}-status`);
  status.textContent = "computing...";
  status.className = "";
  // let the status paint before the blocking call
  setTimeout(() => {
    try {
      const max = num(`${prefix}-max`);
      const t0 = performance.now();
      const ys = Array.from(fn(1.0, num(`${prefix}-w`), max, STEPS, num(`${prefix}-order`)));
      const xs = ys.map((_, i) => (max * i) / STEPS);
      const [lo, hi] = fixedRange ?? [0, Math.max(...ys) * 1.1 || 1];
      plot(document.getElementById(`${prefix}-plot`), xs, ys, lo, hi);
      status.textContent = `${((performance.now() - t0) / 1000).toFixed(1)} s, last value ${ys[ys.length - 1].toFixed(5)}`;
    } catch (e) {
      status.className = "err";
      status.textContent = String(e);
    }
  }, 20);
}

await init();
for (const id of ["w-m", "w-px", "w-py", "w-pz", "w-ax", "w-ay", "w-az", "w-eta"]) {
  document.getElementById(id).addEventListener("input", wigner);
}
document.getElementById("s-go").addEventListener("click", () => sweep("s", pst_entropy_curve));
document.getElementById("c-go").addEventListener("click", () => {
  sweep("c", bell_concurrence_curve, null);
});
wigner();
